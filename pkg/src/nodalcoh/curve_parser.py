"""Reading and writing curve documents.

A document is a JSON object::

    {"name": "chain23", "components": [{"genus": 2}, {"genus": 3}],
     "nodes": [[0, 1]], "degree": 5, "bounds": [[0, 5], [0, 5]]}

Parsing is strict: unknown fields, wrong types and dangling references are
rejected with the 1-based line and column of the offending token.
"""

from __future__ import annotations

import bisect
import enum
import json
import re
from dataclasses import dataclass
from typing import Any, Iterator

from .curve_model import ComponentSpec, NodalCurve, NodeSpec, iter_multidegrees
from .errors import NodalCohomologyError

MAX_DEPTH = 64


class ErrorKind(enum.Enum):
    SYNTAX = "Syntax"
    UNKNOWN_FIELD = "UnknownField"
    TYPE_MISMATCH = "TypeMismatch"
    SEMANTIC_VIOLATION = "SemanticViolation"


class ParseError(NodalCohomologyError, ValueError):
    def __init__(self, kind: ErrorKind, line: int, column: int, message: str):
        self.kind = kind
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {kind.value}: {message}")


@dataclass(frozen=True)
class CurveDocument:
    curve: NodalCurve
    degree: int | None = None
    multidegrees: tuple[tuple[int, ...], ...] | None = None
    bounds: tuple[tuple[int, int], ...] | None = None
    name: str = ""

    def __post_init__(self):
        if self.multidegrees is not None and self.bounds is not None:
            raise ValueError("a document carries multidegrees or bounds, not both")

    def iter_multidegrees(self) -> Iterator[tuple[int, ...]] | None:
        """The explicit multidegree list, the bounded enumeration, or None."""
        if self.multidegrees is not None:
            return iter(self.multidegrees)
        if self.bounds is not None:
            return iter_multidegrees(self.curve, self.degree, self.bounds)
        return None


# ---------- positioned reader ----------

@dataclass
class _Value:
    kind: str  # object | array | string | int | float | bool | null
    value: Any
    offset: int


_NUMBER = re.compile(r"-?(?:0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?")
_WS = " \t\n\r"
_ESCAPES = {'"': '"', "\\": "\\", "/": "/", "b": "\b", "f": "\f", "n": "\n", "r": "\r", "t": "\t"}


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(self, offset: int) -> tuple[int, int]:
        # clamp so positions stay inside the text
        if self.text:
            offset = min(offset, len(self.text) - 1)
        else:
            offset = 0
        line = bisect.bisect_right(self.line_starts, offset)
        return line, offset - self.line_starts[line - 1] + 1

    def fail(self, kind: ErrorKind, offset: int, message: str):
        line, col = self.where(offset)
        raise ParseError(kind, line, col, message)

    def syntax(self, message: str, offset: int | None = None):
        self.fail(ErrorKind.SYNTAX, self.pos if offset is None else offset, message)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self.pos += 1

    def document(self) -> _Value:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.syntax("empty document")
        val = self.value(0)
        self.skip_ws()
        if self.pos < len(self.text):
            self.syntax("unexpected content after the document")
        return val

    def value(self, depth: int) -> _Value:
        if depth > MAX_DEPTH:
            self.syntax("nesting too deep")
        if self.pos >= len(self.text):
            self.syntax("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "{":
            return self.obj(depth)
        if ch == "[":
            return self.arr(depth)
        if ch == '"':
            start = self.pos
            return _Value("string", self.string(), start)
        if ch == "-" or ch.isdigit():
            return self.number()
        for word, kind, val in (("true", "bool", True), ("false", "bool", False), ("null", "null", None)):
            if self.text.startswith(word, self.pos):
                start = self.pos
                self.pos += len(word)
                return _Value(kind, val, start)
        self.syntax(f"unexpected character {ch!r}")

    def obj(self, depth: int) -> _Value:
        start = self.pos
        self.pos += 1
        members: list[tuple[_Value, _Value]] = []
        self.skip_ws()
        if self.text.startswith("}", self.pos):
            self.pos += 1
            return _Value("object", members, start)
        while True:
            self.skip_ws()
            if not self.text.startswith('"', self.pos):
                self.syntax("expected a quoted field name")
            key = _Value("string", None, self.pos)
            key.value = self.string()
            self.skip_ws()
            if not self.text.startswith(":", self.pos):
                self.syntax("expected ':'")
            self.pos += 1
            self.skip_ws()
            members.append((key, self.value(depth + 1)))
            self.skip_ws()
            if self.text.startswith(",", self.pos):
                self.pos += 1
            elif self.text.startswith("}", self.pos):
                self.pos += 1
                return _Value("object", members, start)
            else:
                self.syntax("expected ',' or '}'")

    def arr(self, depth: int) -> _Value:
        start = self.pos
        self.pos += 1
        items: list[_Value] = []
        self.skip_ws()
        if self.text.startswith("]", self.pos):
            self.pos += 1
            return _Value("array", items, start)
        while True:
            self.skip_ws()
            items.append(self.value(depth + 1))
            self.skip_ws()
            if self.text.startswith(",", self.pos):
                self.pos += 1
            elif self.text.startswith("]", self.pos):
                self.pos += 1
                return _Value("array", items, start)
            else:
                self.syntax("expected ',' or ']'")

    def string(self) -> str:
        self.pos += 1
        out = []
        text = self.text
        while True:
            if self.pos >= len(text):
                self.syntax("unterminated string")
            ch = text[self.pos]
            if ch == '"':
                self.pos += 1
                return "".join(out)
            if ch == "\\":
                esc = text[self.pos + 1: self.pos + 2]
                if esc in _ESCAPES:
                    out.append(_ESCAPES[esc])
                    self.pos += 2
                elif esc == "u":
                    out.append(self.unicode_escape())
                else:
                    self.syntax("invalid escape sequence")
            elif ord(ch) < 0x20:
                self.syntax("control character in string")
            elif 0xD800 <= ord(ch) <= 0xDFFF:
                self.syntax("lone surrogate in string")
            else:
                out.append(ch)
                self.pos += 1

    def _hex4(self, at: int) -> int:
        digits = self.text[at + 2: at + 6]
        if len(digits) != 4 or any(c not in "0123456789abcdefABCDEF" for c in digits):
            self.syntax("invalid \\u escape", at)
        return int(digits, 16)

    def unicode_escape(self) -> str:
        start = self.pos
        code = self._hex4(start)
        self.pos += 6
        if 0xD800 <= code <= 0xDBFF:
            if self.text.startswith("\\u", self.pos):
                low = self._hex4(self.pos)
                if 0xDC00 <= low <= 0xDFFF:
                    self.pos += 6
                    return chr(0x10000 + ((code - 0xD800) << 10) + (low - 0xDC00))
            self.syntax("unpaired surrogate escape", start)
        if 0xDC00 <= code <= 0xDFFF:
            self.syntax("unpaired surrogate escape", start)
        return chr(code)

    def number(self) -> _Value:
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.syntax("malformed number")
        start = self.pos
        self.pos = m.end()
        if m.group(1) or m.group(2):
            return _Value("float", m.group(0), start)
        try:
            return _Value("int", int(m.group(0)), start)
        except ValueError:
            self.syntax("integer literal too long", start)


# ---------- schema ----------

_TOP_FIELDS = ("name", "components", "nodes", "degree", "multidegrees", "bounds")


class _Schema:
    def __init__(self, reader: _Reader):
        self.r = reader

    def err(self, kind: ErrorKind, node: _Value, message: str):
        self.r.fail(kind, node.offset, message)

    def expect(self, node: _Value, kind: str, what: str) -> Any:
        if node.kind != kind:
            self.err(ErrorKind.TYPE_MISMATCH, node, f"{what} must be {'an' if kind[0] in 'aeio' else 'a'} {kind}, got {node.kind}")
        return node.value

    def fields(self, node: _Value, allowed: tuple[str, ...], what: str) -> dict[str, tuple[_Value, _Value]]:
        members = self.expect(node, "object", what)
        seen: dict[str, tuple[_Value, _Value]] = {}
        for key, val in members:
            if key.value not in allowed:
                self.err(ErrorKind.UNKNOWN_FIELD, key, f"unknown field {key.value!r} in {what}")
            if key.value in seen:
                self.err(ErrorKind.SEMANTIC_VIOLATION, key, f"duplicate field {key.value!r}")
            seen[key.value] = (key, val)
        return seen

    def int_list(self, node: _Value, what: str) -> list[int]:
        items = self.expect(node, "array", what)
        return [self.expect(item, "int", f"entry of {what}") for item in items]

    def document(self, root: _Value) -> CurveDocument:
        f = self.fields(root, _TOP_FIELDS, "the document")
        name = ""
        if "name" in f:
            name = self.expect(f["name"][1], "string", "name")

        if "components" not in f:
            self.err(ErrorKind.SEMANTIC_VIOLATION, root, "missing required field 'components'")
        comp_nodes = self.expect(f["components"][1], "array", "components")
        if not comp_nodes:
            self.err(ErrorKind.SEMANTIC_VIOLATION, f["components"][1], "a curve needs at least one component")
        components = []
        for i, rec in enumerate(comp_nodes):
            rf = self.fields(rec, ("genus",), "a component record")
            if "genus" not in rf:
                self.err(ErrorKind.SEMANTIC_VIOLATION, rec, "component record lacks 'genus'")
            gnode = rf["genus"][1]
            genus = self.expect(gnode, "int", "genus")
            if genus < 0:
                self.err(ErrorKind.SEMANTIC_VIOLATION, gnode, f"genus must be >= 0, got {genus}")
            components.append(ComponentSpec(i, genus))
        m = len(components)

        nodes = []
        if "nodes" in f:
            for pair in self.expect(f["nodes"][1], "array", "nodes"):
                ends = self.expect(pair, "array", "a node")
                if len(ends) != 2:
                    self.err(ErrorKind.SEMANTIC_VIOLATION, pair, f"a node joins exactly two component ids, got {len(ends)}")
                ids = []
                for end in ends:
                    cid = self.expect(end, "int", "a node end")
                    if not 0 <= cid < m:
                        self.err(ErrorKind.SEMANTIC_VIOLATION, end, f"node references component {cid}; curve has {m}")
                    ids.append(cid)
                nodes.append(NodeSpec(*ids))

        degree = None
        if "degree" in f:
            degree = self.expect(f["degree"][1], "int", "degree")

        if "multidegrees" in f and "bounds" in f:
            later = max(f["multidegrees"][0], f["bounds"][0], key=lambda k: k.offset)
            self.err(ErrorKind.SEMANTIC_VIOLATION, later, "give either 'multidegrees' or 'bounds', not both")

        multidegrees = None
        if "multidegrees" in f:
            vecs = []
            for vec in self.expect(f["multidegrees"][1], "array", "multidegrees"):
                d = self.int_list(vec, "a multidegree")
                if len(d) != m:
                    self.err(ErrorKind.SEMANTIC_VIOLATION, vec, f"multidegree has length {len(d)}; curve has {m} components")
                if degree is not None and sum(d) != degree:
                    self.err(ErrorKind.SEMANTIC_VIOLATION, vec, f"multidegree sums to {sum(d)}, not degree {degree}")
                vecs.append(tuple(d))
            multidegrees = tuple(vecs)

        bounds = None
        if "bounds" in f:
            key, bnode = f["bounds"]
            if degree is None:
                self.err(ErrorKind.SEMANTIC_VIOLATION, key, "'bounds' requires 'degree'")
            ranges = self.expect(bnode, "array", "bounds")
            if len(ranges) != m:
                self.err(ErrorKind.SEMANTIC_VIOLATION, bnode, f"bounds has {len(ranges)} ranges; curve has {m} components")
            pairs = []
            for rng in ranges:
                lohi = self.int_list(rng, "a bounds range")
                if len(lohi) != 2:
                    self.err(ErrorKind.SEMANTIC_VIOLATION, rng, "a bounds range is [low, high]")
                if lohi[0] > lohi[1]:
                    self.err(ErrorKind.SEMANTIC_VIOLATION, rng, f"empty range [{lohi[0]}, {lohi[1]}]")
                pairs.append((lohi[0], lohi[1]))
            bounds = tuple(pairs)

        return CurveDocument(NodalCurve(tuple(components), tuple(nodes)), degree, multidegrees, bounds, name)


def parse_curve(source: str) -> CurveDocument:
    reader = _Reader(source)
    return _Schema(reader).document(reader.document())


def parse_curve_bytes(data: bytes) -> CurveDocument:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        prefix = data[: exc.start].decode("utf-8")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        raise ParseError(ErrorKind.SYNTAX, line, col, "invalid UTF-8") from None
    return parse_curve(text)


def serialize_curve(doc: CurveDocument) -> str:
    data: dict[str, Any] = {
        "name": doc.name,
        "components": [{"genus": c.genus} for c in doc.curve.components],
        "nodes": [[n.left, n.right] for n in doc.curve.nodes],
    }
    if doc.degree is not None:
        data["degree"] = doc.degree
    if doc.multidegrees is not None:
        data["multidegrees"] = [list(d) for d in doc.multidegrees]
    if doc.bounds is not None:
        data["bounds"] = [list(b) for b in doc.bounds]
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))

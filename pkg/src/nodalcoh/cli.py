"""Command-line interface: ``nodalcoh analyze|betti|basis|multiply FILE``.

Exit codes: 0 success, 1 input error, 2 theorem hypothesis not met or
verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from itertools import islice

from . import graded_algebra as ga
from . import oracle
from .curve_model import dual_graph, first_betti, is_compact_type, picard_extension_profile
from .curve_parser import CurveDocument, ParseError, parse_curve_bytes
from .errors import InternalMismatch, NodalCohomologyError, NotCompactType
from .moduli_builder import Mode, ModuliCohomology, betti_table, latex_presentation, nodal_moduli

EXIT_INPUT = 1
EXIT_MATH = 2

# desk-scale guards; beyond these the enumerations stop being interactive
MAX_GENUS = 64
MAX_DEGREE = 500
MAX_BASIS = 200_000
MAX_BLOCKS = 10_000


class InputTooLarge(NodalCohomologyError):
    pass


class VerificationFailed(NodalCohomologyError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> CurveDocument:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    doc = parse_curve_bytes(data)
    for comp in doc.curve.components:
        if comp.genus > MAX_GENUS:
            raise InputTooLarge(f"component {comp.id + 1} has genus {comp.genus}; limit is {MAX_GENUS}")
    return doc


def _build(doc: CurveDocument, mode: str) -> ModuliCohomology:
    multidegrees = None
    it = doc.iter_multidegrees()
    if it is not None:
        multidegrees = list(islice(it, MAX_BLOCKS + 1))
        if len(multidegrees) > MAX_BLOCKS:
            raise InputTooLarge(f"more than {MAX_BLOCKS} multidegrees")
    return nodal_moduli(doc.curve, Mode(mode), multidegrees)


def _guard_size(mc: ModuliCohomology, n_max: int) -> None:
    if n_max > MAX_DEGREE:
        raise InputTooLarge(f"degree {n_max} exceeds the limit {MAX_DEGREE}")
    coeffs = ga.series_coefficients(mc.series, n_max)
    for k, c in enumerate(coeffs):
        if c > MAX_BASIS:
            raise InputTooLarge(f"degree {k} has {c} basis monomials; limit is {MAX_BASIS}")


def _latex_monomial(text: str) -> str:
    text = re.sub(r"α_(\d+)\^\((\d+)\)", r"\\alpha^{(\2)}_{\1}", text)
    text = re.sub(r"c1\^(\d+)", r"c_1^{\1}", text)
    return text.replace("c1", "c_1")


def cmd_analyze(args) -> int:
    doc = _read(args.file)
    graph = dual_graph(doc.curve)
    verdict = is_compact_type(doc.curve)
    profile = picard_extension_profile(doc.curve)
    fields = [
        f"components={graph.vertex_count}",
        f"nodes={graph.edge_count}",
        f"c={graph.connected_components}",
        f"b1={first_betti(graph)}",
        f"compact_type={'true' if verdict.compact else 'false'}",
        f"torus_rank={profile.torus_rank}",
        "abelian_dims=" + ",".join(str(d) for d in profile.abelian_dims),
    ]
    if verdict.witness is not None:
        fields.append(f"witness={verdict.witness}")
    print(" ".join(fields))
    return 0


def _verify(mc: ModuliCohomology, betti: list[int]) -> None:
    cache: dict[tuple[int, ...], list[int]] = {}
    expected = [0] * len(betti)
    for blk in mc.algebra.blocks:
        degs = tuple(g.degree for g in blk.generators)
        if degs not in cache:
            cache[degs] = oracle.betti_bruteforce([degs], len(betti) - 1)
        expected = [a + b for a, b in zip(expected, cache[degs])]
    for k, (got, want) in enumerate(zip(betti, expected)):
        if got != want:
            raise VerificationFailed(f"degree {k}: engine gives {got}, oracle counts {want}")


def cmd_betti(args) -> int:
    doc = _read(args.file)
    mc = _build(doc, args.mode)
    _guard_size(mc, args.max_degree)
    betti = betti_table(mc, args.max_degree)
    if args.verify:
        _verify(mc, betti)
    if args.format == "data":
        payload = {
            "betti": betti,
            "series": mc.series.to_data(),
            "closed_form": mc.series.closed_form(),
            "mode": args.mode,
            "multidegree_count": mc.multidegree_count,
            "warnings": list(mc.warnings),
            "verified": bool(args.verify),
        }
        print(json.dumps(payload, ensure_ascii=False))
    elif args.format == "latex":
        print(latex_presentation(mc))
        print(f"P(t) = {mc.series.latex()}")
        print("(" + ", ".join(f"b_{{{k}}}" for k in range(len(betti))) + ") = (" + ", ".join(map(str, betti)) + ")")
    else:
        print(" ".join(map(str, betti)))
        print(f"P(t) = {mc.series.closed_form()}")
        for w in mc.warnings:
            print(f"warning: {w}")
        if args.verify:
            print(f"verified: oracle agrees in degrees 0..{args.max_degree}")
    return 0


def cmd_basis(args) -> int:
    doc = _read(args.file)
    if args.degree < 0:
        raise InputTooLarge("degree must be non-negative")
    mc = _build(doc, args.mode)
    _guard_size(mc, args.degree)
    basis = ga.basis_in_degree(mc.algebra, args.degree)
    names = [ga.format_monomial(mc.algebra, mono) for mono in basis]
    if args.format == "data":
        print(json.dumps({"degree": args.degree, "dimension": len(names), "basis": names}, ensure_ascii=False))
    elif args.format == "latex":
        print(", ".join(_latex_monomial(n) for n in names) or r"\varnothing")
    else:
        print(", ".join(names) or "(none)")
    return 0


def cmd_multiply(args) -> int:
    doc = _read(args.file)
    mc = _build(doc, args.mode)
    x = ga.parse_element(mc.algebra, args.lhs)
    y = ga.parse_element(mc.algebra, args.rhs)
    print(ga.format_element(mc.algebra, ga.multiply(mc.algebra, x, y)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nodalcoh", description="Cohomology of moduli stacks of line bundles on nodal curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="dual graph invariants and compact-type verdict")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    modes = [m.value for m in Mode]
    b = sub.add_parser("betti", help="Betti table and Poincaré series")
    b.add_argument("file")
    b.add_argument("--max-degree", type=int, default=20)
    b.add_argument("--mode", choices=modes, default=Mode.AS_STATED.value)
    b.add_argument("--verify", action="store_true", help="recount every Betti number by brute force")
    b.add_argument("--format", choices=["table", "data", "latex"], default="table")
    b.set_defaults(func=cmd_betti)

    s = sub.add_parser("basis", help="basis monomials in one degree")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--mode", choices=modes, default=Mode.AS_STATED.value)
    s.add_argument("--format", choices=["table", "data", "latex"], default="table")
    s.set_defaults(func=cmd_basis)

    m = sub.add_parser("multiply", help="cup product of two monomials")
    m.add_argument("file")
    m.add_argument("lhs")
    m.add_argument("rhs")
    m.add_argument("--mode", choices=modes, default=Mode.AS_STATED.value)
    m.set_defaults(func=cmd_multiply)
    return p


def main(argv: list[str] | None = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        try:
            stream.reconfigure(encoding="utf-8")
        except (AttributeError, ValueError):
            pass
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {args.file}:{exc.line}:{exc.column}: {exc.kind.value}: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    except NotCompactType as exc:
        print(f"error: NotCompactType: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (VerificationFailed, InternalMismatch) as exc:
        print(f"error: VerificationMismatch: {exc}", file=sys.stderr)
        return EXIT_MATH
    except NodalCohomologyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

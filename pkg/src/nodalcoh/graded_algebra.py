"""Free graded-commutative algebras over Q and their direct sums.

An algebra is a tuple of blocks.  Each block is a free graded-commutative
algebra on its generators: odd-degree generators anticommute and square to
zero, even-degree ones are polynomial.  Several blocks form a direct sum in
which products across blocks vanish.

Monomials store the block index, the sorted indices of the odd generators
they contain and an exponent vector over the even generators.  Signs follow
the Koszul rule and are computed from the inversions of a merge.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import groupby
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateLabel,
    InvalidDegree,
    MalformedElement,
    NegativeCoefficient,
    OddDegreeForPolynomialGenerator,
    UnknownGenerator,
)

_SENTINEL = sys.maxsize


@dataclass(frozen=True)
class GeneratorInfo:
    label: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidDegree(f"generator {self.label!r} has degree {self.degree}; must be >= 1")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class Block:
    generators: tuple[GeneratorInfo, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        labels = [g.label for g in self.generators]
        if len(set(labels)) != len(labels):
            dup = next(lab for lab in labels if labels.count(lab) > 1)
            raise DuplicateLabel(f"label {dup!r} appears twice in one block")

    @cached_property
    def odd(self) -> tuple[GeneratorInfo, ...]:
        return tuple(g for g in self.generators if g.is_odd)

    @cached_property
    def even(self) -> tuple[GeneratorInfo, ...]:
        return tuple(g for g in self.generators if not g.is_odd)


@dataclass(frozen=True)
class AlgebraPresentation:
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise ValueError("an algebra needs at least one block")

    @property
    def is_direct_sum(self) -> bool:
        return len(self.blocks) > 1

    @property
    def generators(self) -> tuple[GeneratorInfo, ...]:
        return tuple(g for b in self.blocks for g in b.generators)

    def unit(self, block: int = 0) -> Monomial:
        return Monomial(block, (), (0,) * len(self.blocks[block].even))


@dataclass(frozen=True)
class Monomial:
    block: int
    odd_part: tuple[int, ...]
    even_part: tuple[int, ...]

    def sort_key(self):
        # lex order with earlier generators dominant: containing α_1 sorts before not containing it
        return (self.block, self.odd_part + (_SENTINEL,), tuple(-e for e in self.even_part))

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class Element:
    """Q-linear combination of monomials, kept sorted and free of zero terms."""

    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Monomial, Fraction | int]]) -> Element:
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in pairs:
            acc[mono] = acc.get(mono, Fraction(0)) + Fraction(coeff)
        return cls(tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda t: t[0].sort_key())))

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Fraction | int = 1) -> Element:
        return cls.from_terms([(mono, coeff)])

    def __add__(self, other: Element) -> Element:
        return Element.from_terms(self.terms + other.terms)

    def __neg__(self) -> Element:
        return Element(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, factor: Fraction | int) -> Element:
        return Element.from_terms((m, c * factor) for m, c in self.terms)

    def is_zero(self) -> bool:
        return not self.terms


# ---------- constructors ----------

def free_algebra(generators: Sequence[GeneratorInfo], name: str = "") -> AlgebraPresentation:
    return AlgebraPresentation((Block(tuple(generators), name),))


def exterior_algebra(n_generators: int, labels: Sequence[str] | None = None, name: str = "") -> AlgebraPresentation:
    if labels is None:
        labels = [f"α_{j}" for j in range(1, n_generators + 1)]
    if len(labels) != n_generators:
        raise ValueError(f"expected {n_generators} labels, got {len(labels)}")
    return free_algebra([GeneratorInfo(lab, 1) for lab in labels], name)


def polynomial_algebra(generator_label: str = "c1", degree: int = 2) -> AlgebraPresentation:
    if degree < 2 or degree % 2:
        raise OddDegreeForPolynomialGenerator(f"polynomial generator needs even degree >= 2, got {degree}")
    return free_algebra([GeneratorInfo(generator_label, degree)])


def _fresh(label: str, taken: set[str]) -> str:
    while label in taken:
        label += "'"
    return label


def tensor_product(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """(⊕ A_i) ⊗ (⊕ B_j) = ⊕_{i,j} A_i ⊗ B_j, clashing labels of B primed."""
    blocks = []
    for ba in a.blocks:
        for bb in b.blocks:
            taken = {g.label for g in ba.generators}
            renamed = []
            for g in bb.generators:
                lab = _fresh(g.label, taken)
                taken.add(lab)
                renamed.append(GeneratorInfo(lab, g.degree))
            name = "⊗".join(n for n in (ba.name, bb.name) if n)
            blocks.append(Block(ba.generators + tuple(renamed), name))
    return AlgebraPresentation(tuple(blocks))


def direct_sum(summands: Sequence[AlgebraPresentation]) -> AlgebraPresentation:
    if not summands:
        raise ValueError("direct_sum needs at least one summand")
    blocks = [blk for s in summands for blk in s.blocks]
    if len(blocks) == 1:
        return AlgebraPresentation(tuple(blocks))
    names = [blk.name for blk in blocks]
    if "" in names or len(set(names)) != len(names):
        blocks = [Block(blk.generators, str(i + 1)) for i, blk in enumerate(blocks)]
    return AlgebraPresentation(tuple(blocks))


def with_block_name(alg: AlgebraPresentation, name: str) -> AlgebraPresentation:
    if alg.is_direct_sum:
        raise ValueError("only single-block algebras can be renamed")
    return AlgebraPresentation((Block(alg.blocks[0].generators, name),))


# ---------- bases and dimensions ----------

def monomial_degree(alg: AlgebraPresentation, mono: Monomial) -> int:
    blk = alg.blocks[mono.block]
    return sum(blk.odd[i].degree for i in mono.odd_part) + sum(
        e * g.degree for e, g in zip(mono.even_part, blk.even)
    )


def _odd_subsets(degrees: Sequence[int], budget: int, start: int = 0) -> Iterator[tuple[tuple[int, ...], int]]:
    yield (), 0
    for i in range(start, len(degrees)):
        if degrees[i] <= budget:
            for rest, used in _odd_subsets(degrees, budget - degrees[i], i + 1):
                yield (i, *rest), degrees[i] + used


def _even_exponents(degrees: Sequence[int], target: int) -> Iterator[tuple[int, ...]]:
    if not degrees:
        if target == 0:
            yield ()
        return
    for e in range(target // degrees[0] + 1):
        for rest in _even_exponents(degrees[1:], target - e * degrees[0]):
            yield (e, *rest)


def basis_in_degree(alg: AlgebraPresentation, k: int) -> list[Monomial]:
    if k < 0:
        raise ValueError("degree must be non-negative")
    out = []
    for b, blk in enumerate(alg.blocks):
        odd_degs = [g.degree for g in blk.odd]
        even_degs = [g.degree for g in blk.even]
        for subset, used in _odd_subsets(odd_degs, k):
            for exps in _even_exponents(even_degs, k - used):
                out.append(Monomial(b, subset, exps))
    out.sort(key=Monomial.sort_key)
    return out


def dimension(alg: AlgebraPresentation, k: int) -> int:
    return len(basis_in_degree(alg, k))


# ---------- multiplication ----------

def _check_monomial(alg: AlgebraPresentation, mono: Monomial) -> None:
    if not 0 <= mono.block < len(alg.blocks):
        raise MalformedElement(f"block {mono.block} does not exist")
    blk = alg.blocks[mono.block]
    odd = mono.odd_part
    if any(not 0 <= i < len(blk.odd) for i in odd) or any(x >= y for x, y in zip(odd, odd[1:])):
        raise MalformedElement(f"bad odd part {odd} for a block with {len(blk.odd)} odd generators")
    if len(mono.even_part) != len(blk.even) or any(e < 0 for e in mono.even_part):
        raise MalformedElement(f"bad even part {mono.even_part} for a block with {len(blk.even)} even generators")


def multiply_monomials(x: Monomial, y: Monomial) -> tuple[int, Monomial] | None:
    """Signed product of two monomials, or None when it vanishes."""
    if x.block != y.block:
        return None
    a, b = x.odd_part, y.odd_part
    merged = []
    inversions = 0
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            merged.append(b[j])
            inversions += len(a) - i
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    even = tuple(p + q for p, q in zip(x.even_part, y.even_part))
    return (-1 if inversions % 2 else 1), Monomial(x.block, tuple(merged), even)


def multiply(alg: AlgebraPresentation, x: Element, y: Element) -> Element:
    for mono, _ in x.terms + y.terms:
        _check_monomial(alg, mono)
    pairs = []
    for mx, cx in x.terms:
        for my, cy in y.terms:
            prod = multiply_monomials(mx, my)
            if prod is not None:
                sign, mono = prod
                pairs.append((mono, sign * cx * cy))
    return Element.from_terms(pairs)


# ---------- Poincaré series ----------

Factor = tuple[int, int]  # (e, s) stands for (1 + s·t^e)


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _factor_poly(e: int, s: int) -> list[int]:
    poly = [0] * (e + 1)
    poly[0] = 1
    poly[e] += s
    return poly


@dataclass(frozen=True)
class SeriesTerm:
    coefficient: int
    factors: tuple[tuple[Factor, int], ...]  # sorted ((e, s), multiplicity)

    def expand(self) -> list[int]:
        poly = [self.coefficient]
        for (e, s), mult in self.factors:
            for _ in range(mult):
                poly = _poly_mul(poly, _factor_poly(e, s))
        return poly


@dataclass(frozen=True)
class PoincareSeries:
    """Σ_terms coefficient·∏(1 ± t^e)^mult  divided by  ∏_{e in denominator}(1 − t^e)."""

    terms: tuple[SeriesTerm, ...]
    denominator: tuple[int, ...] = field(default=())

    @cached_property
    def numerator(self) -> tuple[int, ...]:
        total: list[int] = [0]
        for term in self.terms:
            poly = term.expand()
            if len(poly) > len(total):
                total.extend([0] * (len(poly) - len(total)))
            for i, c in enumerate(poly):
                total[i] += c
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return tuple(total)

    def closed_form(self) -> str:
        num = " + ".join(_format_term(t) for t in self.terms) or "0"
        if not self.denominator:
            return num
        if len(self.terms) > 1:
            num = f"({num})"
        den = "".join(_format_factor((e, -1), len(list(grp))) for e, grp in groupby(self.denominator))
        return f"{num}/{den}"

    def latex(self) -> str:
        num = " + ".join(_format_term(t, latex=True) for t in self.terms) or "0"
        if not self.denominator:
            return num
        den = "".join(_format_factor((e, -1), len(list(grp)), latex=True) for e, grp in groupby(self.denominator))
        return rf"\frac{{{num}}}{{{den}}}"

    def to_data(self) -> dict:
        return {"num": list(self.numerator), "den": list(self.denominator)}


def _format_factor(factor: Factor, mult: int, latex: bool = False) -> str:
    e, s = factor
    t = "t" if e == 1 else (f"t^{{{e}}}" if latex else f"t^{e}")
    base = f"(1{'+' if s > 0 else '-'}{t})"
    if mult == 1:
        return base
    return f"{base}^{{{mult}}}" if latex else f"{base}^{mult}"


def _format_term(term: SeriesTerm, latex: bool = False) -> str:
    body = "".join(_format_factor(f, m, latex) for f, m in term.factors)
    if not body:
        return str(term.coefficient)
    return body if term.coefficient == 1 else f"{term.coefficient}{body}"


def _block_series(blk: Block) -> tuple[dict[Factor, int], list[int]]:
    factors: dict[Factor, int] = {}
    for g in blk.odd:
        factors[(g.degree, 1)] = factors.get((g.degree, 1), 0) + 1
    return factors, sorted(g.degree for g in blk.even)


def poincare_series(alg: AlgebraPresentation) -> PoincareSeries:
    per_block = [_block_series(blk) for blk in alg.blocks]
    # common denominator: per exponent, the largest multiplicity any block needs
    need: dict[int, int] = {}
    for _, den in per_block:
        for e, grp in groupby(den):
            need[e] = max(need.get(e, 0), len(list(grp)))
    common = sorted(e for e, mult in need.items() for _ in range(mult))

    combined: dict[tuple[tuple[Factor, int], ...], int] = {}
    for factors, den in per_block:
        factors = dict(factors)
        have = {e: len(list(grp)) for e, grp in groupby(den)}
        for e, mult in need.items():
            missing = mult - have.get(e, 0)
            if missing:
                factors[(e, -1)] = factors.get((e, -1), 0) + missing
        key = tuple(sorted(factors.items(), key=lambda item: (item[0][0], -item[0][1])))
        combined[key] = combined.get(key, 0) + 1
    terms = tuple(SeriesTerm(c, key) for key, c in combined.items())
    return PoincareSeries(terms, tuple(common))


def series_coefficients(series: PoincareSeries, n_max: int) -> list[int]:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    coeffs = list(series.numerator[: n_max + 1])
    coeffs += [0] * (n_max + 1 - len(coeffs))
    # dividing by (1 - t^e) is the recurrence c_k += c_{k-e}
    for e in series.denominator:
        for k in range(e, n_max + 1):
            coeffs[k] += coeffs[k - e]
    neg = [k for k, c in enumerate(coeffs) if c < 0]
    if neg:
        raise NegativeCoefficient(f"series coefficient of t^{neg[0]} is {coeffs[neg[0]]}")
    return coeffs


# ---------- display and parsing ----------

def format_monomial(alg: AlgebraPresentation, mono: Monomial) -> str:
    blk = alg.blocks[mono.block]
    parts = [blk.odd[i].label for i in mono.odd_part]
    for g, e in zip(blk.even, mono.even_part):
        if e == 1:
            parts.append(g.label)
        elif e > 1:
            parts.append(f"{g.label}^{e}")
    body = "".join(parts) or "1"
    return f"[{blk.name}]{body}" if alg.is_direct_sum else body


def format_element(alg: AlgebraPresentation, elem: Element) -> str:
    if elem.is_zero():
        return "0"
    out = []
    for n, (mono, coeff) in enumerate(elem.terms):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        text = format_monomial(alg, mono)
        if mag != 1:
            text = f"{mag} {text}"
        if n == 0:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


_COEFF = re.compile(r"(\d+)(?:/(\d+))?")
_BLOCK = re.compile(r"\[([^\]]*)\]")
_POWER = re.compile(r"\^(\d+)")


def parse_element(alg: AlgebraPresentation, text: str) -> Element:
    """Read a signed monomial expression such as ``-α_1^(1)c1^2`` or ``[2]c1``.

    A label with no block selector stands for the sum of that generator over
    every block containing it, so ``c1`` is the diagonal class.
    """
    s = text.strip()
    coeff = Fraction(1)
    if s and s[0] in "+-":
        coeff = Fraction(-1 if s[0] == "-" else 1)
        s = s[1:].lstrip()
    m = _COEFF.match(s)
    if m and (m.end() == len(s) or s[m.end()] in " *·"):
        den = int(m.group(2) or 1)
        if den == 0:
            raise UnknownGenerator(f"zero denominator in {text!r}")
        coeff *= Fraction(int(m.group(1)), den)
        s = s[m.end():].lstrip(" *·")
    scope = range(len(alg.blocks))
    m = _BLOCK.match(s)
    if m:
        names = [blk.name for blk in alg.blocks]
        if m.group(1) not in names:
            raise UnknownGenerator(f"no block named {m.group(1)!r}")
        scope = [names.index(m.group(1))]
        s = s[m.end():]
    labels = sorted({g.label for b in scope for g in alg.blocks[b].generators}, key=len, reverse=True)

    result = Element.from_terms((alg.unit(b), 1) for b in scope)
    if s.strip() in ("", "1"):
        return result.scale(coeff)
    pos = 0
    while pos < len(s):
        if s[pos] in " *·":
            pos += 1
            continue
        label = next((lab for lab in labels if s.startswith(lab, pos)), None)
        if label is None:
            raise UnknownGenerator(f"unknown generator at {s[pos:]!r}")
        pos += len(label)
        power = 1
        pm = _POWER.match(s, pos)
        if pm:
            power = int(pm.group(1))
            pos = pm.end()
        result = multiply(alg, result, _generator_power(alg, label, scope, power))
        if result.is_zero():
            return result
    return result.scale(coeff)


def _generator_power(alg: AlgebraPresentation, label: str, scope: Iterable[int], power: int) -> Element:
    # cross-block products vanish, so (sum over blocks of g)^p = sum of the blockwise powers
    pairs = []
    for b in scope:
        blk = alg.blocks[b]
        if power == 0:
            pairs.append((alg.unit(b), 1))
            continue
        for i, g in enumerate(blk.odd):
            if g.label == label and power == 1:
                pairs.append((Monomial(b, (i,), (0,) * len(blk.even)), 1))
        for i, g in enumerate(blk.even):
            if g.label == label:
                exps = tuple(power if j == i else 0 for j in range(len(blk.even)))
                pairs.append((Monomial(b, (), exps), 1))
    return Element.from_terms(pairs)

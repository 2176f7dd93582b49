"""Cohomology algebras of BC*, Jacobians and moduli stacks of line bundles.

Every stack here splits off a copy of BC*, so each algebra carries the
tensor factor Q[c1] with |c1| = 2.  For a nodal curve of compact type two
readings are built:

* ``AS_STATED``: (⊕_i Λ(α^(i)_1..α^(i)_{2g_i})) ⊗ Q[c1], one block per component.
* ``KUNNETH``: one block per multidegree, each ⊗_i Λ(α^(i)) ⊗ Q[c1].

They agree for a single component and differ as soon as m ≥ 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import graded_algebra as ga
from .curve_model import NodalCurve, is_compact_type
from .errors import EmptyMultidegreeSet, InternalMismatch, MultidegreeLengthMismatch, NotCompactType


class Provenance(enum.Enum):
    CLASSIFYING_STACK = "ClassifyingStack"
    JACOBIAN = "Jacobian"
    SMOOTH_MODULI = "SmoothModuli"
    NODAL_AS_STATED = "NodalAsStated"
    NODAL_KUNNETH = "NodalKunneth"


class Mode(enum.Enum):
    AS_STATED = "as-stated"
    KUNNETH = "kunneth"


@dataclass(frozen=True)
class ModuliCohomology:
    algebra: ga.AlgebraPresentation
    series: ga.PoincareSeries
    provenance: Provenance
    warnings: tuple[str, ...] = ()
    multidegree_count: int | None = None
    multidegrees: tuple[tuple[int, ...], ...] | None = None
    genera: tuple[int, ...] = ()


def alpha_labels(genus: int, component: int) -> list[str]:
    """Labels α_j^(i) with 1-based component index i, j = 1..2g."""
    return [f"α_{j}^({component})" for j in range(1, 2 * genus + 1)]


def _low_genus(genera: Sequence[int]) -> tuple[str, ...]:
    return tuple(
        f"LowGenusComponent: component {i} has genus {g} < 2"
        for i, g in enumerate(genera, start=1)
        if g < 2
    )


def _finish(alg, provenance, **kw) -> ModuliCohomology:
    return ModuliCohomology(alg, ga.poincare_series(alg), provenance, **kw)


def classifying_stack() -> ModuliCohomology:
    return _finish(ga.polynomial_algebra("c1", 2), Provenance.CLASSIFYING_STACK)


def jacobian(g: int) -> ModuliCohomology:
    if g < 0:
        raise ValueError("genus must be non-negative")
    return _finish(ga.exterior_algebra(2 * g, alpha_labels(g, 1)), Provenance.JACOBIAN, genera=(g,))


def smooth_moduli(g: int) -> ModuliCohomology:
    if g < 0:
        raise ValueError("genus must be non-negative")
    alg = ga.tensor_product(ga.exterior_algebra(2 * g, alpha_labels(g, 1)), ga.polynomial_algebra("c1", 2))
    return _finish(alg, Provenance.SMOOTH_MODULI, warnings=_low_genus([g]), genera=(g,))


def _format_multidegree(d: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def nodal_moduli(
    curve: NodalCurve,
    mode: Mode = Mode.AS_STATED,
    multidegrees: Sequence[Sequence[int]] | None = None,
) -> ModuliCohomology:
    verdict = is_compact_type(curve)
    if not verdict.compact:
        raise NotCompactType(verdict.witness)
    mode = Mode(mode)
    genera = curve.genera
    if multidegrees is not None:
        multidegrees = tuple(tuple(d) for d in multidegrees)
        for d in multidegrees:
            if len(d) != curve.m:
                raise MultidegreeLengthMismatch(f"multidegree {d} has length {len(d)}; curve has {curve.m} components")
    warnings = _low_genus(genera)
    lambdas = [ga.exterior_algebra(2 * g, alpha_labels(g, i)) for i, g in enumerate(genera, start=1)]
    c1 = ga.polynomial_algebra("c1", 2)

    if mode is Mode.AS_STATED:
        named = [ga.with_block_name(lam, str(i)) for i, lam in enumerate(lambdas, start=1)]
        alg = ga.tensor_product(ga.direct_sum(named), c1)
        return _finish(
            alg,
            Provenance.NODAL_AS_STATED,
            warnings=warnings,
            multidegree_count=None if multidegrees is None else len(multidegrees),
            multidegrees=multidegrees,
            genera=genera,
        )

    product = c1
    for lam in reversed(lambdas):
        product = ga.tensor_product(lam, product)
    if multidegrees is None:
        alg = product
    elif not multidegrees:
        raise EmptyMultidegreeSet("no multidegree satisfies the given constraints")
    else:
        alg = ga.direct_sum([ga.with_block_name(product, _format_multidegree(d)) for d in multidegrees])
    return _finish(
        alg,
        Provenance.NODAL_KUNNETH,
        warnings=warnings,
        multidegree_count=1 if multidegrees is None else len(multidegrees),
        multidegrees=multidegrees,
        genera=genera,
    )


def betti_table(mc: ModuliCohomology, n_max: int) -> list[int]:
    """b_0..b_n_max, computed from the series and from explicit bases, which must agree."""
    from_series = ga.series_coefficients(mc.series, n_max)
    from_basis = [ga.dimension(mc.algebra, k) for k in range(n_max + 1)]
    if from_series != from_basis:
        k = next(i for i, (a, b) in enumerate(zip(from_series, from_basis)) if a != b)
        raise InternalMismatch(f"degree {k}: series gives {from_series[k]}, basis has {from_basis[k]}")
    return from_series


def latex_presentation(mc: ModuliCohomology) -> str:
    """Theorem-style presentation of the algebra."""

    def lam(g, i):
        if g == 0:
            return r"\mathbb{Q}"
        return rf"\Lambda_{{\mathbb{{Q}}}}(\alpha^{{({i})}}_1, \ldots, \alpha^{{({i})}}_{{{2 * g}}})"

    qc = r"\mathbb{Q}[c_1]"
    lams = [lam(g, i) for i, g in enumerate(mc.genera, start=1)]
    if mc.provenance is Provenance.CLASSIFYING_STACK:
        return rf"H^*(\mathscr{{B}}\mathbb{{C}}^*, \mathbb{{Q}}) \cong {qc}"
    if mc.provenance is Provenance.JACOBIAN:
        return rf"H^*(\mathrm{{Jac}}(X), \mathbb{{Q}}) \cong {lams[0]}"
    lhs = r"H^*(\mathscr{B}un^{1,d}_{Y}, \mathbb{Q}) \cong "
    if mc.provenance is Provenance.SMOOTH_MODULI:
        return rf"H^*(\mathscr{{B}}un^{{1,d}}_{{X}}, \mathbb{{Q}}) \cong {lams[0]} \otimes {qc}"
    if mc.provenance is Provenance.NODAL_AS_STATED:
        return lhs + "[" + r" \oplus ".join(lams) + rf"] \otimes {qc}"
    body = "[" + r" \otimes ".join(lams) + rf"] \otimes {qc}"
    count = mc.multidegree_count or 1
    if count == 1:
        return lhs + body
    return lhs + rf"\bigoplus_{{|\Delta_d| = {count}}} " + body

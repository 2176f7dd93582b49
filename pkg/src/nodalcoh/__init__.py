"""Rational cohomology of moduli stacks of line bundles over nodal curves of compact type."""

from .curve_model import (
    ComponentSpec,
    DualGraph,
    NodalCurve,
    NodeSpec,
    PicardProfile,
    dual_graph,
    enumerate_multidegrees,
    first_betti,
    is_compact_type,
    picard_extension_profile,
)
from .curve_parser import CurveDocument, ParseError, parse_curve, serialize_curve
from .graded_algebra import (
    AlgebraPresentation,
    Element,
    GeneratorInfo,
    Monomial,
    PoincareSeries,
    basis_in_degree,
    direct_sum,
    exterior_algebra,
    multiply,
    poincare_series,
    polynomial_algebra,
    series_coefficients,
    tensor_product,
)
from .moduli_builder import (
    Mode,
    ModuliCohomology,
    betti_table,
    classifying_stack,
    jacobian,
    nodal_moduli,
    smooth_moduli,
)

__version__ = "0.1.0"

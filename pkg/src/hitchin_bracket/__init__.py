"""Hitchin length functions, Labourie cross-ratios and the Goldman
bracket of length functions, evaluated numerically."""

from .bracket import (
    BracketReport,
    InvariantFunction,
    bracket_goldman,
    bracket_labourie,
    gradient_of_invariant,
    to_weil_petersson,
    wolpert_cosine_sum,
)
from .diagram import IntersectionDiagram, IntersectionPoint, reverse_diagram
from .errors import (
    DegeneratePosition,
    DepthTooSmall,
    IdenticalAxes,
    NotHyperbolic,
    NotHyperbolicIsometry,
    NotTransverse,
    Singular,
)
from .fuchsian import (
    Axis,
    CrossingData,
    GroupRep,
    Word,
    axes_crossing,
    axis_of,
    enumerate_intersections,
    evaluate_word,
    genus2_rep,
    holed_torus_rep,
    hyperbolic_pair,
    translation_length,
    twist_deform,
)
from .hitchin import eigen_gap_report, hitchin_rep, irrep_tau
from .linalg import (
    HypDecomposition,
    hyp_decompose,
    matrix_exp,
    project_traceless,
    spectral_projection,
    trace_form,
)
from .spectral import (
    FlagData,
    cross_ratio,
    cross_ratio_pair,
    cross_ratio_via_trace,
    directional_length_derivative,
    eigen_length,
    flags_of,
    length_gradient,
)

__version__ = "0.1.0"

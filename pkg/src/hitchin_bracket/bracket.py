"""Poisson brackets of invariant functions as signed sums over the
crossings of an intersection diagram.

Three evaluations are provided:

* :func:`bracket_goldman` pairs the trace-form gradients of two invariant
  functions at every crossing;
* :func:`bracket_labourie` sums ``epsilon * (b^{ij}(A_p, B_p) - 1/n)``;
* :func:`wolpert_cosine_sum` is the n = 2 sum of half-cosines of the
  unoriented crossing angles.

For eigen-length functions the first two agree term by term, and for
n = 2, i = j = 1 all three agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagram import IntersectionDiagram, reverse_diagram  # noqa: F401  (re-export)
from .errors import NotHyperbolic, Singular
from .linalg import DEFAULT_TOL, as_matrix, hyp_decompose, project_traceless, trace_form
from .spectral import cross_ratio_via_trace, length_gradient


@dataclass(frozen=True)
class InvariantFunction:
    """A conjugation-invariant function on the group.

    ``kind`` is ``"eigen_length"`` (with 1-based ``index``) or ``"trace"``.
    """

    kind: str
    index: int | None = None

    def __post_init__(self):
        if self.kind == "eigen_length":
            if self.index is None or self.index < 1:
                raise ValueError("eigen_length needs a 1-based index")
        elif self.kind == "trace":
            if self.index is not None:
                raise ValueError("trace takes no index")
        else:
            raise ValueError(f"unknown invariant function kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> InvariantFunction:
        """``"trace"``, ``"l3"`` or ``"eigen_length:3"``."""
        text = text.strip().lower()
        if text in ("trace", "tr"):
            return cls("trace")
        for prefix in ("eigen_length:", "l"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls("eigen_length", int(text[len(prefix):]))
        raise ValueError(f"cannot parse invariant function {text!r}")

    def __call__(self, A) -> float:
        A = as_matrix(A)
        if self.kind == "trace":
            return float(np.trace(A))
        D = hyp_decompose(A)
        if self.index > D.n:
            raise IndexError(f"eigen-index {self.index} outside 1..{D.n}")
        return float(np.log(abs(D.eigenvalues[self.index - 1])))


def eigen_length_function(i: int) -> InvariantFunction:
    return InvariantFunction("eigen_length", i)


TRACE = InvariantFunction("trace")


def gradient_of_invariant(f: InvariantFunction, A, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The traceless ``F(A)`` with ``Tr(F(A) X) = d/dt f(exp(tX) A)`` for
    all traceless ``X``."""
    A = as_matrix(A)
    if f.kind == "trace":
        # d/dt Tr(exp(tX) A) = Tr(XA)
        return project_traceless(A)
    return length_gradient(hyp_decompose(A, tol), f.index)


@dataclass(frozen=True)
class Contribution:
    epsilon: int
    term: float

    @property
    def signed(self) -> float:
        return self.epsilon * self.term


@dataclass(frozen=True)
class BracketReport:
    value: float
    contributions: tuple[Contribution, ...]
    formula: str

    def as_dict(self) -> dict:
        return {
            "formula": self.formula,
            "value": self.value,
            "contributions": [
                {"epsilon": c.epsilon, "term": c.term, "signed": c.signed}
                for c in self.contributions
            ],
        }


def _report(contribs, formula) -> BracketReport:
    contribs = tuple(contribs)
    return BracketReport(float(sum(c.signed for c in contribs)), contribs, formula)


def _at_point(k, fn, *args):
    try:
        return fn(*args)
    except (NotHyperbolic, Singular) as exc:
        err = type(exc)(f"intersection point {k}: {exc}")
        err.point_index = k
        raise err from exc


def bracket_goldman(diagram: IntersectionDiagram, f: InvariantFunction, f2: InvariantFunction,
                    tol: float = DEFAULT_TOL) -> BracketReport:
    """``sum_p eps_p Tr(F(A_p) F'(B_p))``."""
    contribs = []
    for k, p in enumerate(diagram.points):
        FA = _at_point(k, gradient_of_invariant, f, p.A, tol)
        FB = _at_point(k, gradient_of_invariant, f2, p.B, tol)
        contribs.append(Contribution(p.epsilon, trace_form(FA, FB)))
    return _report(contribs, f"goldman[{_tag(f)},{_tag(f2)}]")


def _tag(f: InvariantFunction) -> str:
    return "trace" if f.kind == "trace" else f"l{f.index}"


def bracket_labourie(diagram: IntersectionDiagram, i: int, j: int,
                     tol: float = DEFAULT_TOL) -> BracketReport:
    """``{l^i_alpha, l^j_beta} = sum_p eps_p (b^{ij}(A_p, B_p) - 1/n)``,
    with ``b^{ij}`` from the trace of spectral projections."""
    n = diagram.n
    contribs = []
    for k, p in enumerate(diagram.points):
        DA = _at_point(k, hyp_decompose, p.A, tol)
        DB = _at_point(k, hyp_decompose, p.B, tol)
        contribs.append(Contribution(p.epsilon, cross_ratio_via_trace(DA, DB, i, j) - 1.0 / n))
    return _report(contribs, f"labourie[{i},{j}]")


def unoriented_angle(phi: float) -> float:
    """Counterclockwise angle in (0, pi) between the geodesics themselves."""
    return phi if phi < math.pi else phi - math.pi


def wolpert_cosine_sum(diagram: IntersectionDiagram) -> float:
    """``(1/2) sum_p cos(theta_p)`` with ``theta_p`` the unoriented angle."""
    if diagram.n != 2:
        raise ValueError("the cosine sum is defined for n = 2 diagrams only")
    total = 0.0
    for k, p in enumerate(diagram.points):
        if p.phi is None:
            raise ValueError(f"intersection point {k} carries no angle")
        total += 0.5 * math.cos(unoriented_angle(p.phi))
    return total


def to_weil_petersson(top_length_bracket: float) -> float:
    """Convert ``{l^1_alpha, l^1_beta}`` (n = 2) into the Weil-Petersson
    bracket ``{l_alpha, l_beta}_wp`` of hyperbolic lengths.

    The net factor is 2: lengths double (``l = 2 l^1``) while the Goldman
    form is twice the Weil-Petersson form. The result is the plain sum of
    cosines, which is also the derivative of ``l_beta`` along the twist
    flow of ``alpha``.
    """
    return 2.0 * top_length_bracket

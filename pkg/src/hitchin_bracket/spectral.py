"""Eigen-length functions, their trace-form gradients, and Labourie
cross-ratios of eigen-flags.

Two routes compute ``b^{ij}(A, B)``: the projective quotient of pairings
between eigenlines and dual planes (:func:`cross_ratio_pair`) and the
division-free ``Tr(p_i(A) p_j(B))`` (:func:`cross_ratio_via_trace`). The
trace route is the default everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePosition
from .linalg import (
    DEFAULT_TOL,
    HypDecomposition,
    _check_index,
    as_matrix,
    hyp_decompose,
    spectral_projection,
    trace_form,
)

DEGENERACY_TOL = 1e-10


def eigen_length(D: HypDecomposition, i: int) -> float:
    """``l^i = log |lambda_i|``."""
    return float(np.log(abs(D.eigenvalues[_check_index(i, D.n)])))


def eigen_lengths(D: HypDecomposition) -> np.ndarray:
    return np.log(np.abs(D.eigenvalues))


def length_gradient(D: HypDecomposition, i: int) -> np.ndarray:
    """The traceless matrix ``L^i(A) = p_i(A) - I/n``.

    It represents ``X -> d/dt l^i(exp(tX) A)`` under the trace pairing.
    """
    return spectral_projection(D, i) - np.eye(D.n) / D.n


def directional_length_derivative(A, X, i: int, tol: float = DEFAULT_TOL) -> float:
    """``d/dt l^i(exp(tX) A)`` at ``t = 0``.

    Evaluated as the eigenvalue perturbation ``Tr(p_i(A) . XA) / lambda_i``
    of the path ``A + t XA``, which agrees with ``Tr(p_i(A) X)`` because
    ``A p_i(A) = lambda_i p_i(A)``.
    """
    A = as_matrix(A)
    X = as_matrix(X, n=A.shape[0])
    D = hyp_decompose(A, tol)
    lam = D.eigenvalues[_check_index(i, D.n)]
    return float(np.trace(spectral_projection(D, i) @ X @ A) / lam)


def cross_ratio(x, y, z, w, tol: float = DEGENERACY_TOL) -> float:
    """``b(x, y, z, w) = <y|z><w|x> / (<y|x><w|z>)``.

    ``x`` and ``z`` are vectors representing lines; ``y`` and ``w`` are
    covectors representing planes. Any nonzero rescaling of an argument
    leaves the value unchanged.
    """
    x, y, z, w = (np.asarray(v, dtype=float) for v in (x, y, z, w))
    for name, v in zip("xyzw", (x, y, z, w)):
        if not np.linalg.norm(v) > 0:
            raise ValueError(f"{name} must be nonzero")
    yx = y @ x
    wz = w @ z
    if abs(yx) < tol * np.linalg.norm(y) * np.linalg.norm(x):
        raise DegeneratePosition("<y|x> vanishes: quadruple not in general position")
    if abs(wz) < tol * np.linalg.norm(w) * np.linalg.norm(z):
        raise DegeneratePosition("<w|z> vanishes: quadruple not in general position")
    return float((y @ z) * (w @ x) / (yx * wz))


@dataclass(frozen=True)
class FlagData:
    """Eigenlines ``xi^i`` (columns of ``lines``) and the dual planes
    ``theta^i`` (rows of ``planes``) of a matrix in Hyp."""

    lines: np.ndarray
    planes: np.ndarray

    @property
    def n(self) -> int:
        return self.lines.shape[0]

    def xi(self, i: int) -> np.ndarray:
        return self.lines[:, _check_index(i, self.n)]

    def theta(self, i: int) -> np.ndarray:
        return self.planes[_check_index(i, self.n), :]


def flags_of(D: HypDecomposition) -> FlagData:
    # left covector i kills every eigenline j != i, so it defines theta^i
    return FlagData(lines=D.right.copy(), planes=D.left.copy())


def cross_ratio_pair(DA: HypDecomposition, DB: HypDecomposition, i: int, j: int,
                     tol: float = DEGENERACY_TOL) -> float:
    """``b^{ij}(A, B) = b(xi^i(A), theta^i(A), xi^j(B), theta^j(B))``."""
    FA, FB = flags_of(DA), flags_of(DB)
    return cross_ratio(FA.xi(i), FA.theta(i), FB.xi(j), FB.theta(j), tol=tol)


def cross_ratio_via_trace(DA: HypDecomposition, DB: HypDecomposition, i: int, j: int) -> float:
    """``Tr(p_i(A) p_j(B))``, equal to ``b^{ij}(A, B)`` without any division."""
    if DA.n != DB.n:
        raise ValueError(f"dimension mismatch: {DA.n} vs {DB.n}")
    return trace_form(spectral_projection(DA, i), spectral_projection(DB, j))

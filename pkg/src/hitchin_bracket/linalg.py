"""Dense real-matrix primitives: trace pairing, traceless projection,
hyperbolic eigendecompositions and their rank-one spectral projections.

Matrices are plain ``numpy`` float arrays. Eigen-indices in the public API
are 1-based (``i = 1`` is the eigenvalue of largest modulus), matching the
usual ``l^1 > l^2 > ... > l^n`` labelling of length functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotHyperbolic, Singular

MIN_DIM = 2
MAX_DIM = 12
DEFAULT_TOL = 1e-8


def as_matrix(A, *, n=None) -> np.ndarray:
    """Validate ``A`` as a finite square real matrix and return a float copy."""
    M = np.array(A, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not MIN_DIM <= M.shape[0] <= MAX_DIM:
        raise ValueError(f"dimension {M.shape[0]} outside [{MIN_DIM}, {MAX_DIM}]")
    if n is not None and M.shape[0] != n:
        raise ValueError(f"expected a {n}x{n} matrix, got {M.shape[0]}x{M.shape[0]}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def trace_form(X, Y) -> float:
    """The trace pairing ``Tr(XY)``."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != Y.shape or X.ndim != 2:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    S = X * Y.T
    # S + S.T is the same array for (X, Y) and (Y, X): bitwise symmetric result
    return float(np.sum(S + S.T) / 2)


def project_traceless(A) -> np.ndarray:
    """Orthogonal projection of gl(n) onto sl(n) for the trace pairing."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    return A - (np.trace(A) / n) * np.eye(n)


def is_traceless(X, *, rtol=1e-12) -> bool:
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    return abs(np.trace(X)) <= n * rtol * max(1.0, np.linalg.norm(X))


@dataclass(frozen=True)
class HypDecomposition:
    """Real eigendecomposition of a matrix in Hyp.

    ``right[:, k]`` spans the eigenline of ``eigenvalues[k]`` and
    ``left[k, :]`` is the dual covector, so ``left @ right = I``. Column
    ``k`` corresponds to eigen-index ``k + 1``.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray

    def __post_init__(self):
        for name in ("matrix", "eigenvalues", "right", "left"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def right_vector(self, i: int) -> np.ndarray:
        return self.right[:, _check_index(i, self.n)]

    def left_covector(self, i: int) -> np.ndarray:
        return self.left[_check_index(i, self.n), :]

    def reconstruct(self) -> np.ndarray:
        return (self.right * self.eigenvalues) @ self.left


def _check_index(i: int, n: int) -> int:
    if not 1 <= i <= n:
        raise IndexError(f"eigen-index {i} outside 1..{n}")
    return i - 1


def _normalize_sign(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if nz.size and v[nz[0]] < 0:
        v = -v
    return v


def hyp_decompose(A, tol: float = DEFAULT_TOL) -> HypDecomposition:
    """Decompose ``A`` as ``sum_i lambda_i a_+^i (x) a_-^i``.

    Eigenvalues come out sorted by decreasing modulus. Right vectors have
    unit norm with their first nonzero coordinate positive; left covectors
    are the rows of the inverse of the right-vector matrix.

    Raises:
        Singular: the smallest singular value vanishes to working precision.
        NotHyperbolic: a non-real eigenvalue, or two moduli whose relative
            gap ``(|l_i| - |l_{i+1}|) / |l_i|`` is at most ``tol``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= n * np.finfo(float).eps * sv[0]:
        raise Singular("matrix is singular to working precision")

    w, V = np.linalg.eig(A)
    mod = np.abs(w)
    if np.iscomplexobj(w) and np.any(np.abs(w.imag) > tol * mod):
        raise NotHyperbolic("matrix has a non-real eigenvalue pair")
    order = np.argsort(-mod, kind="stable")
    w = w.real[order]
    V = V.real[:, order]
    mod = np.abs(w)
    gaps = (mod[:-1] - mod[1:]) / mod[:-1]
    if np.any(gaps <= tol):
        k = int(np.argmin(gaps))
        raise NotHyperbolic(
            f"eigenvalue moduli {mod[k]:.6g} and {mod[k + 1]:.6g} "
            f"are not separated (relative gap {gaps[k]:.3g})"
        )
    R = np.column_stack([_normalize_sign(V[:, k]) for k in range(n)])
    L = np.linalg.inv(R)
    return HypDecomposition(matrix=A, eigenvalues=w, right=R, left=L)


def relative_gaps(D: HypDecomposition) -> np.ndarray:
    mod = np.abs(D.eigenvalues)
    return (mod[:-1] - mod[1:]) / mod[:-1]


def spectral_projection(D: HypDecomposition, i: int) -> np.ndarray:
    """Projection onto the i-th eigenline parallel to the other eigenlines."""
    return np.outer(D.right_vector(i), D.left_covector(i))


def matrix_exp(X, t: float = 1.0) -> np.ndarray:
    """``exp(tX)`` by scaling and squaring."""
    return scipy.linalg.expm(t * np.asarray(X, dtype=float))

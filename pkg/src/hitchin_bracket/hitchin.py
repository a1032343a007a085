"""The irreducible representation of SL(2, R) on binary forms, and the
Fuchsian-locus Hitchin representations it produces."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import NotHyperbolic, Singular
from .fuchsian import GroupRep, Word, evaluate_word
from .linalg import DEFAULT_TOL, MAX_DIM, as_matrix, hyp_decompose, relative_gaps
from .spectral import eigen_lengths


def irrep_tau(n: int, g) -> np.ndarray:
    """Matrix of ``g`` acting on degree ``n - 1`` binary forms.

    Basis ``x^(n-1-k) y^k`` for k = 0..n-1; ``g`` acts by the substitution
    ``f(x, y) -> f((x, y) g)``, so column k holds the coefficients of
    ``(a x + c y)^(n-1-k) (b x + d y)^k``. This is a homomorphism and
    ``diag(l, 1/l)`` maps to ``diag(l^(n-1), l^(n-3), ..., l^(1-n))``.
    """
    if not isinstance(n, (int, np.integer)) or not 2 <= n <= MAX_DIM:
        raise ValueError(f"n must be an integer in [2, {MAX_DIM}], got {n!r}")
    (a, b), (c, d) = as_matrix(g, n=2)
    deg = n - 1
    out = np.zeros((n, n))
    for k in range(n):
        p = deg - k
        # (a x + c y)^p = sum_r C(p,r) a^(p-r) c^r x^(p-r) y^r
        first = [comb(p, r) * a ** (p - r) * c ** r for r in range(p + 1)]
        second = [comb(k, s) * b ** (k - s) * d ** s for s in range(k + 1)]
        for r, u in enumerate(first):
            for s, v in enumerate(second):
                out[r + s, k] += u * v
    return out


def hitchin_rep(rep0: GroupRep, n: int) -> GroupRep:
    """Compose a Fuchsian representation with ``irrep_tau(n, .)``."""
    if rep0.n != 2:
        raise ValueError("hitchin_rep expects a representation into SL(2, R)")
    gens = tuple(irrep_tau(n, g) for g in rep0.generators)
    return GroupRep(gens, rep0.relators, {**rep0.meta, "tau": n})


@dataclass(frozen=True)
class GapEntry:
    word: str
    hyperbolic: bool
    min_relative_gap: float | None = None
    eigen_lengths: tuple[float, ...] = ()
    reason: str | None = None


def eigen_gap_report(rep: GroupRep, words, tol: float = DEFAULT_TOL) -> list[GapEntry]:
    """For each word, whether its image lies in Hyp and how well its
    eigenvalue moduli are separated."""
    out = []
    for w in words:
        if isinstance(w, str):
            w = Word.parse(w)
        M = evaluate_word(rep, w)
        try:
            D = hyp_decompose(M, tol)
        except (NotHyperbolic, Singular) as exc:
            out.append(GapEntry(str(w), False, reason=f"{type(exc).__name__}: {exc}"))
            continue
        out.append(GapEntry(
            str(w), True,
            min_relative_gap=float(relative_gaps(D).min()),
            eigen_lengths=tuple(float(x) for x in eigen_lengths(D)),
        ))
    return out


def weight_law_lengths(n: int, top_length: float) -> np.ndarray:
    """Eigen lengths ``(n + 1 - 2i) log mu`` of ``tau_n(g)``, given ``log mu``."""
    return np.array([(n + 1 - 2 * i) * top_length for i in range(1, n + 1)])

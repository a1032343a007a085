"""Random test inputs: traceless directions and well-separated Hyp matrices."""

from __future__ import annotations

import numpy as np

from .errors import NotHyperbolic, Singular
from .linalg import hyp_decompose, matrix_exp


def random_traceless(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    X = rng.normal(scale=scale, size=(n, n))
    return X - np.trace(X) / n * np.eye(n)


def random_unimodular(n: int, rng: np.random.Generator, scale: float = 0.6) -> np.ndarray:
    return matrix_exp(random_traceless(n, rng, scale))


def random_hyp(n: int, rng: np.random.Generator, *, min_spacing: float = 0.25,
               conj_scale: float = 0.4, max_tries: int = 100) -> np.ndarray:
    """``C D C^-1`` with ``C = exp(random traceless)`` and ``D`` a diagonal
    of distinct moduli and random signs, unimodular; non-Hyp draws are
    rejected."""
    for _ in range(max_tries):
        steps = min_spacing + rng.exponential(0.5, size=n - 1)
        logs = -np.concatenate([[0.0], np.cumsum(steps)])
        logs -= logs.mean()
        signs = rng.choice([-1.0, 1.0], size=n)
        if np.prod(signs) < 0:
            signs[-1] *= -1
        C = random_unimodular(n, rng, conj_scale)
        A = C @ np.diag(signs * np.exp(logs)) @ np.linalg.inv(C)
        try:
            hyp_decompose(A)
        except (NotHyperbolic, Singular):
            continue
        return A
    raise RuntimeError("could not draw a Hyp matrix")

"""Intersection diagrams: the combinatorial input of bracket sums."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_matrix


@dataclass(frozen=True)
class IntersectionPoint:
    """A transverse crossing of two closed curves.

    ``A`` and ``B`` are the holonomies of the two curves based at the
    crossing, ``epsilon`` the orientation sign and ``phi`` (optional, n = 2)
    the angle in (0, 2pi) from the positive ray of the first curve to the
    positive ray of the second, measured counterclockwise.
    """

    epsilon: int
    A: np.ndarray
    B: np.ndarray
    phi: float | None = None

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon!r}")
        A = as_matrix(self.A)
        B = as_matrix(self.B, n=A.shape[0])
        A.flags.writeable = False
        B.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if self.phi is not None:
            phi = float(self.phi)
            if not 0.0 < phi < 2 * math.pi:
                raise ValueError(f"phi must lie in (0, 2pi), got {phi}")
            object.__setattr__(self, "phi", phi)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class IntersectionDiagram:
    n: int
    points: tuple[IntersectionPoint, ...] = ()
    labels: tuple[str, str] = ("alpha", "beta")
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "labels", tuple(self.labels))
        for k, p in enumerate(self.points):
            if p.n != self.n:
                raise ValueError(f"point {k} has dimension {p.n}, diagram has {self.n}")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def conjugate(self, C) -> IntersectionDiagram:
        """Conjugate every holonomy by the same invertible matrix."""
        C = as_matrix(C, n=self.n)
        Ci = np.linalg.inv(C)
        pts = [IntersectionPoint(p.epsilon, C @ p.A @ Ci, C @ p.B @ Ci, p.phi)
               for p in self.points]
        return IntersectionDiagram(self.n, pts, self.labels, dict(self.meta))


def reverse_diagram(diagram: IntersectionDiagram) -> IntersectionDiagram:
    """Swap the roles of the two curves.

    Each crossing keeps its location; the sign flips and the
    counterclockwise angle from the new first curve is ``2pi - phi``.
    """
    pts = [
        IntersectionPoint(
            -p.epsilon, p.B, p.A,
            None if p.phi is None else 2 * math.pi - p.phi,
        )
        for p in diagram.points
    ]
    a, b = diagram.labels
    return IntersectionDiagram(diagram.n, pts, (b, a), dict(diagram.meta))

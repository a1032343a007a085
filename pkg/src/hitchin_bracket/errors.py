"""Exceptions raised by the library."""


class HitchinBracketError(Exception):
    """Base class for all errors raised by this package."""


class NotHyperbolic(HitchinBracketError):
    """Matrix is not real-diagonalizable with distinct eigenvalue moduli."""


class Singular(HitchinBracketError):
    """Matrix is not invertible within tolerance."""


class DegeneratePosition(HitchinBracketError):
    """A line/plane quadruple is not in general position."""


class NotHyperbolicIsometry(HitchinBracketError):
    """2x2 matrix does not act on the upper half-plane as a hyperbolic isometry."""


class IdenticalAxes(HitchinBracketError):
    """Two hyperbolic isometries share an axis endpoint."""


class NotTransverse(HitchinBracketError):
    """Two closed geodesics coincide, so their intersection is not transverse."""


class DepthTooSmall(HitchinBracketError):
    """Intersection count changed between the last two search depths."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts

"""Hyperbolic plane geometry for SL(2, R): axes, crossing angles, test
representations of surface groups, geodesic intersections and the
Fenchel-Nielsen twist on a one-holed torus.

Conventions: the upper half-plane carries its standard orientation and
angles are counterclockwise. A 2x2 matrix acts by Moebius transformation.
Boundary points are floats, with ``math.inf`` for the point at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import IntersectionDiagram, IntersectionPoint
from .errors import DepthTooSmall, IdenticalAxes, NotHyperbolicIsometry, NotTransverse
from .linalg import as_matrix, hyp_decompose

TRACE_TOL = 1e-9
ENDPOINT_TOL = 1e-9
GENERATOR_NAMES = "abcdefghijklmnopqrstuvwxyz"


# --- Moebius action ---------------------------------------------------------

def mobius(g, z):
    """Apply ``z -> (az + b)/(cz + d)``; ``z`` may be complex or ``inf``."""
    (a, b), (c, d) = np.asarray(g, dtype=float)
    if z == math.inf or z == -math.inf:
        return math.inf if c == 0 else a / c
    den = c * z + d
    if den == 0:
        return math.inf
    return (a * z + b) / den


def rotation_about_i(angle: float) -> np.ndarray:
    """Elliptic element turning H^2 counterclockwise by ``angle`` about i."""
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, s], [-s, c]])


def _boundary_angle(x: float) -> float:
    # Cayley parametrization of R u {inf} by the circle
    return math.pi if math.isinf(x) else 2.0 * math.atan(x)


def same_boundary_point(x: float, y: float, tol: float = ENDPOINT_TOL) -> bool:
    d = abs(_boundary_angle(x) - _boundary_angle(y))
    return min(d, 2 * math.pi - d) < tol


# --- single isometries ------------------------------------------------------

def _unimodular(g) -> np.ndarray:
    g = as_matrix(g, n=2)
    det = np.linalg.det(g)
    if det <= 0:
        raise NotHyperbolicIsometry("matrix does not preserve the upper half-plane")
    return g / math.sqrt(det)


def translation_length(g, tol: float = TRACE_TOL) -> float:
    """``2 arccosh(|Tr g| / 2)`` for a hyperbolic element of SL(2, R)."""
    g = _unimodular(g)
    tr = abs(np.trace(g))
    if tr <= 2.0 + tol:
        raise NotHyperbolicIsometry(f"|trace| = {tr:.12g} is not greater than 2")
    return 2.0 * math.acosh(tr / 2.0)


@dataclass(frozen=True)
class Axis:
    repelling: float
    attracting: float

    def __post_init__(self):
        if same_boundary_point(self.repelling, self.attracting):
            raise ValueError("axis endpoints coincide")

    def image(self, g) -> Axis:
        return Axis(mobius(g, self.repelling), mobius(g, self.attracting))


def _fixed_point(g: np.ndarray, lam: float) -> float:
    (a, b), (c, d) = g
    u = np.array([b, lam - a])
    v = np.array([lam - d, c])
    w = u if np.linalg.norm(u) >= np.linalg.norm(v) else v
    return math.inf if w[1] == 0 else float(w[0] / w[1])


def axis_of(g, tol: float = TRACE_TOL) -> Axis:
    """Repelling and attracting fixed points of a hyperbolic isometry.

    The attracting point is the projectivized eigenvector of the eigenvalue
    of larger modulus.
    """
    g = _unimodular(g)
    translation_length(g, tol)
    tr = np.trace(g)
    root = math.sqrt(tr * tr - 4.0)
    big = (tr + math.copysign(root, tr)) / 2.0
    return Axis(repelling=_fixed_point(g, 1.0 / big), attracting=_fixed_point(g, big))


def _normalizer(axis: Axis) -> np.ndarray:
    """Orientation-preserving Moebius map sending the axis to 0 -> inf."""
    r, a = axis.repelling, axis.attracting
    if math.isinf(a):
        M = np.array([[1.0, -r], [0.0, 1.0]])
    elif math.isinf(r):
        M = np.array([[0.0, -1.0], [1.0, -a]])
    else:
        M = np.array([[1.0, -r], [1.0, -a]])
        if np.linalg.det(M) < 0:
            M[1] *= -1
    return M / math.sqrt(np.linalg.det(M))


@dataclass(frozen=True)
class CrossingData:
    """Transverse crossing of two oriented axes.

    ``phi`` is the counterclockwise angle from the positive ray of the
    first axis to the positive ray of the second; ``epsilon`` is +1 exactly
    when ``0 < phi < pi``.
    """

    point: complex
    phi: float
    epsilon: int

    @property
    def theta(self) -> float:
        """Counterclockwise angle in (0, pi) from the first geodesic to the second."""
        return self.phi if self.phi < math.pi else self.phi - math.pi


def _crossing_in_frame(p: float, q: float):
    """Crossing of the imaginary axis (upward) with the geodesic p -> q.

    Returns ``(y, phi)`` with crossing point ``iy``, or None.
    """
    if math.isinf(p) or math.isinf(q) or p * q >= 0:
        return None
    y = math.sqrt(-p * q)
    centre = 0.5 * (p + q)
    sgn = 1.0 if q > p else -1.0
    tx, ty = sgn * y, sgn * centre
    phi = math.atan2(-tx, ty) % (2 * math.pi)
    return y, phi


def _sign_of_angle(phi: float) -> int:
    if abs(math.sin(phi)) < 1e-12:
        raise NotTransverse(f"crossing angle {phi} is not transverse")
    return 1 if phi < math.pi else -1


def axes_crossing(g, h, tol: float = TRACE_TOL) -> CrossingData | None:
    """Where and at what angle the axis of ``h`` crosses the axis of ``g``.

    Returns None when the axes are disjoint in H^2 (including the
    asymptotic case of one shared endpoint).

    Raises:
        IdenticalAxes: both endpoints are shared.
    """
    ag, ah = axis_of(g, tol), axis_of(h, tol)
    return _axes_crossing(ag, ah)


def _axes_crossing(ag: Axis, ah: Axis) -> CrossingData | None:
    shared = [
        any(same_boundary_point(x, y) for y in (ag.repelling, ag.attracting))
        for x in (ah.repelling, ah.attracting)
    ]
    if all(shared):
        raise IdenticalAxes("the two axes coincide")
    if any(shared):
        return None
    M = _normalizer(ag)
    hit = _crossing_in_frame(mobius(M, ah.repelling), mobius(M, ah.attracting))
    if hit is None:
        return None
    y, phi = hit
    point = complex(mobius(np.linalg.inv(M), complex(0.0, y)))
    return CrossingData(point=point, phi=phi, epsilon=_sign_of_angle(phi))


def hyperbolic_pair(l1: float, l2: float, phi: float):
    """Two hyperbolic elements of translation lengths ``l1``, ``l2`` whose
    axes cross at i at angle ``phi``."""
    if not (l1 > 0 and l2 > 0):
        raise ValueError("translation lengths must be positive")
    if not 0 < phi < 2 * math.pi or math.isclose(phi, math.pi):
        raise ValueError("phi must lie in (0, 2pi) and differ from pi")
    A = np.diag([math.exp(l1 / 2), math.exp(-l1 / 2)])
    R = rotation_about_i(phi)
    B = R @ np.diag([math.exp(l2 / 2), math.exp(-l2 / 2)]) @ np.linalg.inv(R)
    return A, B


# --- words and representations ----------------------------------------------

@dataclass(frozen=True)
class Word:
    """A freely reduced word: a sequence of (generator index, +1 or -1)."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for k, (g, e) in enumerate(letters):
            if g < 0 or e not in (1, -1):
                raise ValueError(f"bad letter {(g, e)!r}")
            if k and letters[k - 1] == (g, -e):
                raise ValueError(f"word is not freely reduced at position {k}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> Word:
        """``"aB"`` means a * b^-1: lowercase letters are generators in
        alphabetical order, uppercase their inverses."""
        letters = []
        for ch in text.strip():
            if ch in " *":
                continue
            idx = GENERATOR_NAMES.find(ch.lower())
            if idx < 0:
                raise ValueError(f"unknown generator {ch!r}")
            letters.append((idx, 1 if ch.islower() else -1))
        return cls(tuple(letters))

    def __str__(self):
        return "".join(
            GENERATOR_NAMES[g] if e == 1 else GENERATOR_NAMES[g].upper()
            for g, e in self.letters
        )

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def cyclic_permutation(self, k: int) -> Word:
        k %= max(len(self), 1)
        return Word(self.letters[k:] + self.letters[:k])


def commutator(x: int, y: int) -> Word:
    return Word(((x, 1), (y, 1), (x, -1), (y, -1)))


@dataclass(frozen=True)
class GroupRep:
    """Generator images of a finitely presented (or free) group."""

    generators: tuple[np.ndarray, ...]
    relators: tuple[Word, ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = as_matrix(g, n=as_matrix(self.generators[0]).shape[0])
            g.flags.writeable = False
            gens.append(g)
        if not gens:
            raise ValueError("a representation needs at least one generator")
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "relators", tuple(self.relators))

    @property
    def n(self) -> int:
        return self.generators[0].shape[0]

    @property
    def relation_residual(self) -> float:
        """``max_r ||rho(r) - I||`` (Frobenius), 0 for a free group."""
        I = np.eye(self.n)
        return max((float(np.linalg.norm(evaluate_word(self, r) - I)) for r in self.relators),
                   default=0.0)

    def max_det_defect(self) -> float:
        return max(abs(np.linalg.det(g) - 1.0) for g in self.generators)


def evaluate_word(rep: GroupRep, w: Word) -> np.ndarray:
    out = np.eye(rep.n)
    for g, e in w.letters:
        if g >= len(rep.generators):
            raise IndexError(f"generator index {g} out of range")
        M = rep.generators[g]
        out = out @ (M if e == 1 else np.linalg.inv(M))
    return out


def reduced_words(rank: int, max_len: int):
    """All freely reduced words of length <= max_len, by increasing length."""
    level = [()]
    yield Word()
    letters = [(g, e) for g in range(rank) for e in (1, -1)]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for x in letters:
                if w and w[-1] == (x[0], -x[1]):
                    continue
                nxt.append(w + (x,))
        for w in nxt:
            yield Word(w)
        level = nxt


# --- concrete Fuchsian groups ------------------------------------------------

def _half_turn(direction: float, distance: float) -> np.ndarray:
    S = rotation_about_i(direction) @ np.diag([math.exp(distance / 2), math.exp(-distance / 2)])
    return S @ np.array([[0.0, 1.0], [-1.0, 0.0]]) @ np.linalg.inv(S)


def genus2_rep() -> GroupRep:
    """Fuchsian genus-2 surface group from the regular octagon with vertex
    angle pi/4 centred at i.

    Sides 0..7 carry the boundary word a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1.
    Each pairing is a rotation about i followed by the half-turn about the
    target side's midpoint; the generators a1, b1, a2, b2 have indices 0..3.
    """
    # inradius of the regular octagon with angles pi/4: cosh r = cot(pi/8)
    inradius = math.acosh(1.0 / math.tan(math.pi / 8))

    def pairing(src: int, dst: int) -> np.ndarray:
        return _half_turn(dst * math.pi / 4, inradius) @ rotation_about_i((dst - src) * math.pi / 4)

    a1 = pairing(2, 0)
    b1 = np.linalg.inv(pairing(3, 1))
    a2 = pairing(6, 4)
    b2 = np.linalg.inv(pairing(7, 5))
    relator = Word(commutator(0, 1).letters + commutator(2, 3).letters)
    return GroupRep((a1, b1, a2, b2), (relator,), {"kind": "genus2"})


def holed_torus_min_length(angle: float) -> float:
    """Infimum of generator lengths keeping ``Tr[a, b] < -2`` at the given angle."""
    lo, hi = 1e-6, 50.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _holed_torus_commutator_trace(mid, angle) < -2.0:
            hi = mid
        else:
            lo = mid
    return hi


def _holed_torus_generators(t: float, angle: float):
    return hyperbolic_pair(t, t, angle)


def _holed_torus_commutator_trace(t: float, angle: float) -> float:
    A, B = _holed_torus_generators(t, angle)
    return float(np.trace(A @ B @ np.linalg.inv(A) @ np.linalg.inv(B)))


def holed_torus_rep(t: float = 2.5, angle: float = math.pi / 3) -> GroupRep:
    """Free group <a, b> uniformizing a one-holed torus.

    Both generators have translation length ``t`` and their axes cross once
    at i with angle ``angle`` (default pi/3). Valid for
    ``t > holed_torus_min_length(angle)`` (about 1.763 at angle pi/2 and
    1.866 at pi/3), where ``Tr[a, b] < -2``.
    """
    if not 0 < angle < math.pi:
        raise ValueError("angle must lie in (0, pi)")
    if not t > 0 or _holed_torus_commutator_trace(t, angle) >= -2.0:
        raise ValueError(
            f"t = {t} gives Tr[a,b] >= -2; need t > {holed_torus_min_length(angle):.6f}"
        )
    A, B = _holed_torus_generators(t, angle)
    return GroupRep((A, B), (), {"kind": "holed_torus", "t": t, "angle": angle})


def commutator_trace(rep: GroupRep, x: int = 0, y: int = 1) -> float:
    return float(np.trace(evaluate_word(rep, commutator(x, y))))


def twist_deform(rep: GroupRep, t: float) -> GroupRep:
    """Fenchel-Nielsen twist of a holed-torus representation along ``a``.

    ``a`` is kept and ``b`` is replaced by ``T_t b`` where ``T_t`` translates
    distance ``t`` along the axis of ``a`` toward its attracting end.
    """
    if len(rep.generators) != 2 or rep.n != 2:
        raise ValueError("twist_deform expects a 2x2 holed-torus representation")
    A, B = rep.generators
    if t == 0:
        return rep
    D = hyp_decompose(A)
    P1 = np.outer(D.right[:, 0], D.left[0])
    P2 = np.outer(D.right[:, 1], D.left[1])
    T = math.exp(t / 2) * P1 + math.exp(-t / 2) * P2
    return GroupRep((A, T @ B), rep.relators, {**rep.meta, "twist": t})


# --- intersections of closed geodesics ---------------------------------------

@dataclass(frozen=True)
class _Candidate:
    position: float
    phi: float
    B: np.ndarray


def enumerate_intersections(rep: GroupRep, alpha: Word, beta: Word, depth: int = 4,
                            *, check_stability: bool = True) -> IntersectionDiagram:
    """Intersection points of the closed geodesics of ``alpha`` and ``beta``.

    Lifts of the beta-geodesic are the axes of ``g beta g^-1`` for reduced
    words ``g`` of length <= ``depth``. Each lift crossing the axis of
    ``rho(alpha)`` is translated by a power of ``rho(alpha)`` so that the
    crossing lies in one period of that axis; duplicates are merged. Points
    are ordered by their position along the alpha-axis, and each carries the
    holonomy pair ``(rho(alpha), A^-m g rho(beta) g^-1 A^m)`` based there.

    Raises:
        NotTransverse: the two geodesics coincide.
        DepthTooSmall: with ``check_stability``, when the count at
            ``depth - 1`` differs from the count at ``depth``.
    """
    if rep.n != 2:
        raise ValueError("enumerate_intersections needs a 2x2 (Fuchsian) representation")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    A = evaluate_word(rep, alpha)
    Bw = evaluate_word(rep, beta)
    axis_a = axis_of(A)
    axis_b = axis_of(Bw)
    period = translation_length(A)
    M = _normalizer(axis_a)
    Ainv = np.linalg.inv(A)

    found: list[_Candidate] = []
    counts = {}
    rank = len(rep.generators)
    for g in reduced_words(rank, depth):
        G = evaluate_word(rep, g)
        lift = axis_b.image(G)
        p, q = mobius(M, lift.repelling), mobius(M, lift.attracting)
        ends = [abs(_boundary_angle(v)) for v in (p, q)]
        at_ends = [min(e, math.pi - e) < ENDPOINT_TOL for e in ends]
        if all(at_ends):
            raise NotTransverse(f"geodesics of {alpha} and {beta} coincide")
        if any(at_ends):
            continue
        hit = _crossing_in_frame(p, q)
        if hit is not None:
            y, phi = hit
            _sign_of_angle(phi)
            s = math.log(y)
            m = math.floor(s / period)
            pos = s - m * period
            if period - pos < 1e-9:
                pos, m = 0.0, m + 1
            Am = np.linalg.matrix_power(A, m) if m >= 0 else np.linalg.matrix_power(Ainv, -m)
            C = G @ Bw @ np.linalg.inv(G)
            Bp = np.linalg.inv(Am) @ C @ Am
            if not any(_same_crossing(c, pos, phi, period) for c in found):
                found.append(_Candidate(pos, phi, Bp))
        counts[len(g)] = len(found)

    count_prev = counts.get(depth - 1, 0)
    if check_stability and count_prev != len(found):
        raise DepthTooSmall(
            f"intersection count changed from {count_prev} to {len(found)} "
            f"between depth {depth - 1} and {depth}",
            counts=counts,
        )
    found.sort(key=lambda c: c.position)
    points = [IntersectionPoint(_sign_of_angle(c.phi), A, c.B, c.phi) for c in found]
    return IntersectionDiagram(
        2, points, (str(alpha), str(beta)),
        {"depth": depth, "counts_by_depth": counts, "positions": [c.position for c in found]},
    )


def _same_crossing(c: _Candidate, pos: float, phi: float, period: float, tol: float = 1e-7) -> bool:
    dp = abs(c.position - pos)
    dp = min(dp, period - dp)
    da = abs(c.phi - phi)
    da = min(da, 2 * math.pi - da)
    return dp < tol and da < tol


def all_intersection_counts(rep: GroupRep, alpha: Word, beta: Word, depths) -> dict[int, int]:
    """Intersection counts at several depths, without the stability check."""
    return {
        d: len(enumerate_intersections(rep, alpha, beta, d, check_stability=False))
        for d in depths
    }


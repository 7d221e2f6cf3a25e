"""Elliptic-curve P3P solver.

Recovers the camera-to-point distances from three unit view vectors and the
three side lengths of the control triangle.  Plane through the camera centre
parallel to the control plane cuts the three containment planes in lines
parallel to the triangle sides; finding that plane is an arc-sliding problem
whose solutions are the intersections of the (deformed) sliding quartic with
a line.

Steps, in order:

1. dot products, containment-plane normals, triangle angle cosines;
2. choose which view vector to rotate onto +z (smallest separation score);
3. rotation, deformation and the images of the third containment plane;
4. eliminate one variable between quartic and line, solve the quartic;
5. recover the sliding state, the plane normal, and the translation.

Indices: ``side_len[i]`` is the length of the side opposite point ``i`` and
``c[k]`` is the normal of the containment plane that does *not* contain
``v[k]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import geom3 as g3
from .arc_curve import (
    CurveParams,
    Deformation,
    alphas_from_dots,
    deformation,
    proj_quartic6,
    proj_quartic9,
)
from .errors import (
    BackfacingPlane,
    DegenerateParams,
    DegenerateViewLines,
    GeometryError,
    NoViableFrame,
)
from .geom3 import Rot3, Vec3
from .roots import poly_real_roots

_CYCLE = ((1, 2, 0), (2, 0, 1), (0, 1, 2))  # (i, j, k): c[k] = v[i] x v[j]


@dataclass(frozen=True)
class SolverConfig:
    """Tunable thresholds of the elliptic-curve solver."""

    frame_min: float = 1e-6  # |mu0|, |nu0|, |alpha1|, |alpha2|, score
    eta_min: float = 1e-12
    dedup_tol: float = 1e-9
    spread_tol: float = 1e-3  # relative disagreement of the three translations
    drop_tol: float = 0.0  # leading-coefficient cut in the eliminated quartic
    front_min: float = 1e-10  # v_i . n must exceed this


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class P3PProblem:
    """Unit view vectors and the side lengths of the control triangle."""

    v_hat: Tuple[Vec3, Vec3, Vec3]
    side_len: Tuple[float, float, float]

    def __post_init__(self):
        for v in self.v_hat:
            if abs(g3.norm(v) - 1.0) > 1e-12:
                raise DegenerateViewLines("view vectors must be unit length")
        a, b, c = self.side_len
        if min(a, b, c) <= 0.0:
            raise DegenerateParams("side lengths must be positive")
        tol = 1e-9 * max(a, b, c)
        if a + b - c <= tol or b + c - a <= tol or c + a - b <= tol:
            raise DegenerateParams("side lengths violate the triangle inequality")
        for i, j, _ in _CYCLE:
            if abs(g3.dot(self.v_hat[i], self.v_hat[j])) >= 1.0 - 1e-10:
                raise DegenerateViewLines("two view vectors are parallel")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]]) -> "P3PProblem":
        """Problem seen by a camera at the origin looking at three points."""
        P = [g3.vec(p) for p in points]
        v = tuple(g3.normalize(p) for p in P)
        s = tuple(g3.norm(g3.sub(P[j], P[i])) for i, j, _ in _CYCLE)
        return cls(v_hat=v, side_len=s)  # type: ignore[arg-type]


@dataclass(frozen=True)
class P3PSolution:
    """One candidate: distances along the view vectors and the points they give."""

    dist: Tuple[float, float, float]
    points: Tuple[Vec3, Vec3, Vec3]
    plane_normal: Vec3
    spread: float = 0.0  # relative spread of the three translation estimates


@dataclass(frozen=True)
class DerivedGeometry:
    v: Tuple[Vec3, Vec3, Vec3]
    side_len: Tuple[float, float, float]
    vdot: Tuple[float, float, float]  # vdot[k] = v[i] . v[j]
    c: Tuple[Vec3, Vec3, Vec3]  # c[k] = unit(v[i] x v[j])
    cdot: Tuple[float, float, float]  # cdot[k] = c[i] . c[j]
    cos_int: Tuple[float, float, float]  # interior angle cosine at vertex i
    sdot: Tuple[float, float, float]  # exterior angle cosine at vertex i


@dataclass(frozen=True)
class VerticalFrame:
    """A choice of view vector to stand upright, with its curve constants.

    ``first``/``second`` are the two other view indices, ordered so that the
    containment plane through ``first`` lands on the ``-theta0`` circle.
    ``deformed`` is False when no candidate passed the selection test and
    the solver falls back to the undeformed quartic.
    """

    index: int
    first: int
    second: int
    rotation: Rot3
    params: CurveParams
    scores: Tuple[float, float, float]
    deformed: bool = True


@dataclass(frozen=True)
class PlaneTranslation:
    lam: float
    dists: Tuple[float, float, float]
    spread: float
    estimates: Tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))


def derive_geometry(p: P3PProblem) -> DerivedGeometry:
    v = p.v_hat
    vdot = []
    c = []
    for i, j, _ in _CYCLE:
        vdot.append(g3.dot(v[i], v[j]))
        cr = g3.cross(v[i], v[j])
        n = g3.norm(cr)
        if n < 1e-10:
            raise DegenerateViewLines("view vectors are (nearly) parallel")
        c.append(g3.scale(1.0 / n, cr))
    cdot = tuple(g3.dot(c[i], c[j]) for i, j, _ in _CYCLE)
    # cross products of nearly coplanar views give nearly parallel normals
    for i, j, _ in _CYCLE:
        if g3.norm(g3.cross(c[i], c[j])) < 1e-10:
            raise DegenerateViewLines("view vectors are (nearly) coplanar")
    s = p.side_len
    cos_int = tuple(
        (s[j] * s[j] + s[k] * s[k] - s[i] * s[i]) / (2.0 * s[j] * s[k])
        for k, i, j in ((2, 0, 1), (0, 1, 2), (1, 2, 0))
    )
    return DerivedGeometry(
        v=v,
        side_len=s,
        vdot=tuple(vdot),  # type: ignore[arg-type]
        c=tuple(c),  # type: ignore[arg-type]
        cdot=cdot,  # type: ignore[arg-type]
        cos_int=cos_int,  # type: ignore[arg-type]
        sdot=tuple(-x for x in cos_int),  # type: ignore[arg-type]
    )


def _frame_candidate(g: DerivedGeometry, k: int):
    """Curve constants for standing ``v[k]`` upright (rotation not built yet)."""
    i, j = (k + 1) % 3, (k + 2) % 3
    vk = g.v[k]
    ta = g3.sub(g.v[i], g3.scale(g3.dot(g.v[i], vk), vk))
    tb = g3.sub(g.v[j], g3.scale(g3.dot(g.v[j], vk), vk))
    ta = g3.normalize(ta)
    tb = g3.normalize(tb)
    cr = g3.cross(ta, tb)
    if g3.dot(cr, vk) < 0.0:
        i, j, ta, tb = j, i, tb, ta
    theta0 = 0.5 * math.atan2(g3.norm(cr), g3.dot(ta, tb))
    mu0, nu0 = math.cos(theta0), math.sin(theta0)
    # a1 ~ P_i - P_k, a2 ~ P_j - P_k, a ~ P_j - P_i
    a1, a2 = alphas_from_dots(g.cos_int[k], -g.cos_int[i], g.cos_int[j])
    return i, j, ta, mu0, nu0, a1, a2


def choose_vertical_frame(g: DerivedGeometry, config: SolverConfig = DEFAULT_CONFIG) -> VerticalFrame:
    """Pick the view vector whose upright frame keeps the singularities most orthogonal.

    Each candidate is scored by ``|(alpha2^2 - alpha1^2) mu0 nu0|``.  A
    candidate is rejected when ``eta <= eta_min`` or any of ``|mu0|``,
    ``|nu0|``, ``|alpha1|``, ``|alpha2|`` or the score is below
    ``frame_min``; the lowest surviving score wins, lowest index on ties.

    If every candidate is rejected but some still avoid the divisions by
    zero, the one with the largest ``mu0 nu0`` is returned with
    ``deformed=False``.  This covers equilateral triangles, where
    ``|alpha1| == |alpha2|`` for all three choices.

    Raises
    ------
    NoViableFrame
        If no candidate avoids a near-zero divisor.
    """
    tiny = config.frame_min
    cands = []
    scores = []
    for k in range(3):
        i, j, ta, mu0, nu0, a1, a2 = _frame_candidate(g, k)
        d = a2 * a2 - a1 * a1
        score = abs(d * mu0 * nu0)
        eta = 1.0 - 4.0 * score * score
        divisors_ok = min(abs(mu0), abs(nu0), abs(a1), abs(a2)) >= tiny
        ok = divisors_ok and score >= tiny and eta > config.eta_min
        cands.append((k, i, j, ta, mu0, nu0, a1, a2, divisors_ok))
        scores.append(score if ok else math.inf)

    best = None
    for k in range(3):
        if scores[k] == math.inf:
            continue
        if best is None or scores[k] < scores[best] * (1.0 - 1e-12):
            best = k
    deformed = True
    if best is None:
        deformed = False
        for k in range(3):
            c = cands[k]
            if not c[8]:
                continue
            if best is None or c[4] * c[5] > cands[best][4] * cands[best][5] * (1.0 + 1e-12):
                best = k
        if best is None:
            raise NoViableFrame("every view vector gives a near-zero divisor")

    k, i, j, ta, mu0, nu0, a1, a2, _ = cands[best]
    rot = g3.rotation_between_pairs(g.v[k], ta, (0.0, 0.0, 1.0), (mu0, -nu0, 0.0))
    return VerticalFrame(
        index=k,
        first=i,
        second=j,
        rotation=rot,
        params=CurveParams(mu0, nu0, a1, a2),
        scores=tuple(scores),  # type: ignore[arg-type]
        deformed=deformed,
    )


def plane_translation(n_hat: Vec3, g: DerivedGeometry, p: Optional[P3PProblem] = None) -> PlaneTranslation:
    """Distance ``lam`` of the control plane from the camera, given its unit normal.

    Each pair of view lines gives one estimate from its side length; the
    three are averaged.  Distances along the view lines are ``lam / (v_i . n)``.

    Raises
    ------
    BackfacingPlane
        If some ``v_i . n < 1e-10``.
    """
    side = p.side_len if p is not None else g.side_len
    d = [g3.dot(v, n_hat) for v in g.v]
    if min(d) < 1e-10:
        raise BackfacingPlane("plane normal does not face all three points")
    # difference of the two scaled rays taken componentwise; the equivalent
    # d_i^2 + d_j^2 - 2 d_i d_j cos form cancels badly for nearly parallel rays
    w = [g3.scale(1.0 / di, v) for di, v in zip(d, g.v)]
    est = []
    for i, j, k in _CYCLE:
        est.append(side[k] / g3.norm(g3.sub(w[i], w[j])))
    lam = math.fsum(est) / 3.0
    spread = (max(est) - min(est)) / lam
    return PlaneTranslation(
        lam=lam,
        dists=(lam / d[0], lam / d[1], lam / d[2]),
        spread=spread,
        estimates=tuple(est),  # type: ignore[arg-type]
    )


def _substitute(terms, a: float, b: float) -> List[float]:
    """Put ``t = a s + b`` into ``sum c s^i t^j``; coefficients in ``s``, highest first."""
    pw = [[1.0], [b, a]]
    for _ in range(3):
        prev = pw[-1]
        nxt = [0.0] * (len(prev) + 1)
        for n, cf in enumerate(prev):
            nxt[n] += cf * b
            nxt[n + 1] += cf * a
        pw.append(nxt)
    out = [0.0] * 5
    for (i, j), cf in terms:
        for n, x in enumerate(pw[j]):
            out[i + n] += cf * x
    return out[::-1]


def _intersect(terms, line: Vec3, drop_tol: float) -> List[Tuple[float, float]]:
    """Affine points of ``sum c s^i t^j = 0`` on ``l0 s + l1 t + l2 = 0``.

    The variable with the larger line coefficient is eliminated.
    """
    l0, l1, l2 = line
    if abs(l1) >= abs(l0):
        if l1 == 0.0:
            return []
        a, b = -l0 / l1, -l2 / l1
        return [(s, a * s + b) for s in poly_real_roots(_substitute(terms, a, b), drop_tol)]
    a, b = -l1 / l0, -l2 / l0
    swapped = [((j, i), cf) for (i, j), cf in terms]
    return [(a * t + b, t) for t in poly_real_roots(_substitute(swapped, a, b), drop_tol)]


def _curve_points(frame: VerticalFrame, line: Vec3, drop_tol: float) -> List[Vec3]:
    """Unit points ``a`` (upright frame) on both the sliding curve and the great circle."""
    p = frame.params
    out = []
    if frame.deformed:
        dfm: Deformation = deformation(p)
        q9 = proj_quartic9(p, dfm)
        terms = (((2, 2), q9.uv), ((2, 0), q9.uw), ((0, 2), q9.vw), ((1, 1), q9.m), ((0, 0), q9.w4))
        M = dfm.M
        # line in U, V, W: l . (M u) = (M^T l) . u
        lu = g3.matvec(g3.transpose(M), line)
        for U, V in _intersect(terms, lu, drop_tol):
            X = g3.matvec(M, (U, V, 1.0))
            out.append(g3.normalize(X))
    else:
        q6 = proj_quartic6(p)
        terms = (
            ((4, 0), q6.q), ((0, 4), q6.q), ((2, 2), q6.xy), ((2, 0), q6.xz),
            ((0, 2), q6.yz), ((3, 1), q6.m), ((1, 3), q6.m), ((1, 1), q6.m),
            ((0, 0), q6.z4),
        )  # fmt: skip
        for X, Y in _intersect(terms, line, drop_tol):
            out.append(g3.normalize((X, Y, 1.0)))
    return out


EQUATOR_SWITCH = 1e-3  # below this |z| the cosines come from the unit constraint
EQUATOR_SIGN_TOL = 1e-6


def _cosines_near_equator(p: CurveParams, nu1: float, nu2: float, z: float) -> List[Tuple[float, float]]:
    # mu_i = +-sqrt(1 - nu_i^2), signs chosen so that alpha1 mu1 + alpha2 mu2 = z;
    # near z = 0 two sign patterns can both fit, and both are returned
    if abs(nu1) > 1.0 + 1e-9 or abs(nu2) > 1.0 + 1e-9:
        return []
    m1 = math.sqrt(max(0.0, 1.0 - nu1 * nu1))
    m2 = math.sqrt(max(0.0, 1.0 - nu2 * nu2))
    combos = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            r = abs(p.alpha1 * s1 * m1 + p.alpha2 * s2 * m2 - z)
            combos.append((r, s1 * m1, s2 * m2))
    combos.sort()
    best = combos[0][0]
    tol = max(EQUATOR_SIGN_TOL, 4.0 * best)
    return [(a, b) for r, a, b in combos if r <= tol]


def _normals_from_point(p: CurveParams, a: Vec3) -> List[Vec3]:
    """Unit normals of the sliding great circle(s) through ``a`` (upright frame).

    The sines come from the linear relations in ``x, y``; the cosines from
    the rational formula, or from the unit constraint when ``a`` is close to
    the equator, where that formula divides by a vanishing ``z``.
    """
    x, y, z = a
    mu0, nu0, al1, al2 = p.mu0, p.nu0, p.alpha1, p.alpha2
    mn = mu0 * nu0
    nu1 = (nu0 * x - mu0 * y) / (2.0 * al1 * mn)
    nu2 = (nu0 * x + mu0 * y) / (2.0 * al2 * mn)
    if abs(z) < EQUATOR_SWITCH:
        cosines = _cosines_near_equator(p, nu1, nu2, z)
    else:
        m2, n2 = mu0 * mu0, nu0 * nu0
        a1s, a2s = al1 * al1, al2 * al2
        common = (n2 - m2 - 1.0) * n2 * x * x + (m2 - n2 - 1.0) * m2 * y * y
        xt = 2.0 * mn * x * y
        den = 4.0 * m2 * n2 * z
        cosines = [
            (
                (common + xt + 2.0 * (1.0 + a1s - a2s) * m2 * n2) / (al1 * den),
                (common - xt + 2.0 * (1.0 - a1s + a2s) * m2 * n2) / (al2 * den),
            )
        ]
    out = []
    for mu1, mu2 in cosines:
        e1 = (mu0 * nu1, -nu0 * nu1, mu1)
        e2 = (mu0 * nu2, nu0 * nu2, mu2)
        n = g3.cross(e1, e2)
        nn = g3.norm(n)
        if nn > 0.0:
            out.append((n[0] / nn, n[1] / nn, n[2] / nn))
    return out


def _dedup(sols: List[P3PSolution], tol: float) -> List[P3PSolution]:
    out: List[P3PSolution] = []
    for s in sols:
        for o in out:
            if all(abs(a - b) <= tol * max(abs(a), abs(b)) for a, b in zip(s.dist, o.dist)):
                break
        else:
            out.append(s)
    return out


def solve(p: P3PProblem, config: SolverConfig = DEFAULT_CONFIG) -> List[P3PSolution]:
    """All distance triples consistent with the view vectors and side lengths.

    Returns between 0 and 4 solutions, each with every control point in
    front of the camera.  An empty list means the curve and line had no
    usable real intersection.

    Raises
    ------
    NoViableFrame
        If no view vector can be stood upright without a near-zero divisor.
    DegenerateViewLines
        If the view vectors are (nearly) parallel or coplanar.
    """
    g = derive_geometry(p)
    frame = choose_vertical_frame(g, config)
    R = frame.rotation
    Rt = g3.transpose(R)
    line = g3.matvec(R, g.c[frame.index])

    sols: List[P3PSolution] = []
    normals = [n for a in _curve_points(frame, line, config.drop_tol) for n in _normals_from_point(frame.params, a)]
    for n_up in normals:
        n = g3.matvec(Rt, n_up)
        d = [g3.dot(v, n) for v in g.v]
        if d[0] < 0.0 and d[1] < 0.0 and d[2] < 0.0:
            n = (-n[0], -n[1], -n[2])
        try:
            tr = plane_translation(n, g)
        except BackfacingPlane:
            continue
        if not tr.spread <= config.spread_tol:
            continue
        pts = tuple(g3.scale(dk, v) for dk, v in zip(tr.dists, g.v))
        sols.append(P3PSolution(dist=tr.dists, points=pts, plane_normal=n, spread=tr.spread))  # type: ignore[arg-type]
    sols.sort(key=lambda s: s.spread)
    return _dedup(sols, config.dedup_tol)


__all__ = [
    "P3PProblem",
    "P3PSolution",
    "DerivedGeometry",
    "VerticalFrame",
    "PlaneTranslation",
    "SolverConfig",
    "derive_geometry",
    "choose_vertical_frame",
    "plane_translation",
    "solve",
    "GeometryError",
]

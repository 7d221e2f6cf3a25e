"""Small 3-vector / 3x3-matrix kernel on plain float tuples.

The solvers call these helpers thousands of times per pose, so everything
works on tuples of Python floats rather than numpy arrays (allocation of tiny
arrays dominates otherwise).  Matrices are row-major tuples of row tuples.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

from .errors import AngleMismatch

Vec3 = Tuple[float, float, float]
Mat3 = Tuple[Vec3, Vec3, Vec3]
# A Rot3 is a Mat3 satisfying R^T R = I, det R = +1.
Rot3 = Mat3

IDENTITY: Mat3 = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

CROSS_DEGENERACY = 1e-8
PAIR_ANGLE_TOL = 1e-9


def vec(v: Sequence[float]) -> Vec3:
    return (float(v[0]), float(v[1]), float(v[2]))


def add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale(s: float, a: Vec3) -> Vec3:
    return (s * a[0], s * a[1], s * a[2])


def dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(a: Vec3) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


def normalize(a: Vec3) -> Vec3:
    n = norm(a)
    if n == 0.0:
        raise ZeroDivisionError("cannot normalize the zero vector")
    return (a[0] / n, a[1] / n, a[2] / n)


def matvec(m: Mat3, v: Vec3) -> Vec3:
    return (dot(m[0], v), dot(m[1], v), dot(m[2], v))


def transpose(m: Mat3) -> Mat3:
    return (
        (m[0][0], m[1][0], m[2][0]),
        (m[0][1], m[1][1], m[2][1]),
        (m[0][2], m[1][2], m[2][2]),
    )


def matmul(a: Mat3, b: Mat3) -> Mat3:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)  # type: ignore[return-value]


def det(m: Mat3) -> float:
    return dot(m[0], cross(m[1], m[2]))


def is_rotation(m: Mat3, tol: float = 1e-10) -> bool:
    """True when ``m`` is orthonormal with determinant +1 (entrywise ``tol``)."""
    mtm = matmul(transpose(m), m)
    for i in range(3):
        for j in range(3):
            if abs(mtm[i][j] - (1.0 if i == j else 0.0)) > tol:
                return False
    return abs(det(m) - 1.0) <= tol


def rotation_from_axis_angle(axis: Vec3, angle: float) -> Rot3:
    """Euler-Rodrigues matrix for a rotation by ``angle`` about unit ``axis``."""
    half = 0.5 * angle
    a = math.cos(half)
    s = math.sin(half)
    b, c, d = s * axis[0], s * axis[1], s * axis[2]
    aa, bb, cc, dd = a * a, b * b, c * c, d * d
    bc, ad, ac, ab, bd, cd = b * c, a * d, a * c, a * b, b * d, c * d
    return (
        (aa + bb - cc - dd, 2.0 * (bc - ad), 2.0 * (bd + ac)),
        (2.0 * (bc + ad), aa + cc - bb - dd, 2.0 * (cd - ab)),
        (2.0 * (bd - ac), 2.0 * (cd + ab), aa + dd - bb - cc),
    )


def random_rotation_xy_axis(angle: float, axis_azimuth: float) -> Rot3:
    """Rotation by ``angle`` about the horizontal axis ``(cos psi, sin psi, 0)``."""
    return rotation_from_axis_angle(
        (math.cos(axis_azimuth), math.sin(axis_azimuth), 0.0), angle
    )


def _fixed_rotations() -> tuple:
    # Deterministic stand-ins for "apply a random rotation"; axes and angles
    # were drawn once and frozen so results never depend on global RNG state.
    specs = (
        ((0.26726124191242440, 0.53452248382484879, 0.80178372573727319), 1.1),
        ((-0.62469504755442429, 0.78086880944303039, 0.0), 2.3),
        ((0.57735026918962584, -0.57735026918962584, 0.57735026918962584), 0.7),
    )
    return tuple(rotation_from_axis_angle(normalize(ax), ang) for ax, ang in specs)


_FALLBACKS = _fixed_rotations()


def _pair_rotation(u1: Vec3, u2: Vec3, w1: Vec3, w2: Vec3):
    """Single Euler-Rodrigues rotation taking u_i to w_i, or None if degenerate.

    The rotation axis is orthogonal to both displacements ``w_i - u_i``, so it
    is their normalized cross product.
    """
    k = cross(sub(w1, u1), sub(w2, u2))
    kn = norm(k)
    if kn < CROSS_DEGENERACY:
        return None
    k = (k[0] / kn, k[1] / kn, k[2] / kn)
    # measure the angle on whichever input sits farther from the axis
    s1 = dot(u1, k)
    s2 = dot(u2, k)
    if abs(s1) <= abs(s2):
        u, w, s = u1, w1, s1
    else:
        u, w, s = u2, w2, s2
    p = sub(u, scale(s, k))
    q = sub(w, scale(dot(w, k), k))
    angle = math.atan2(dot(k, cross(p, q)), dot(p, q))
    return rotation_from_axis_angle(k, angle)


def _align_single(u: Vec3, w: Vec3) -> Rot3:
    # minimal rotation taking u to w; used when the pair is parallel
    k = cross(u, w)
    kn = norm(k)
    c = dot(u, w)
    if kn < 1e-15:
        if c > 0.0:
            return IDENTITY
        # half turn about any axis perpendicular to u
        t = (1.0, 0.0, 0.0) if abs(u[0]) < 0.9 else (0.0, 1.0, 0.0)
        return rotation_from_axis_angle(normalize(cross(u, t)), math.pi)
    return rotation_from_axis_angle(scale(1.0 / kn, k), math.atan2(kn, c))


def rotation_between_pairs(u1: Vec3, u2: Vec3, w1: Vec3, w2: Vec3) -> Rot3:
    """Proper rotation R with ``R u1 = w1`` and ``R u2 = w2``.

    All four inputs are unit vectors and the pairs must subtend the same
    angle.  When the displacement cross product is too small to define an
    axis, a fixed pseudo-random rotation is applied first and composed with
    the rotation found for the pre-rotated pair.

    Raises
    ------
    AngleMismatch
        If ``|u1.u2 - w1.w2| > 1e-9``.
    """
    cu = dot(u1, u2)
    cw = dot(w1, w2)
    if abs(cu - cw) > PAIR_ANGLE_TOL:
        raise AngleMismatch(f"pair angles differ: cos {cu!r} vs {cw!r}")
    if norm(cross(u1, u2)) < 1e-12:
        # parallel pair: the second vector carries no extra constraint
        return _align_single(u1, w1)

    r = _pair_rotation(u1, u2, w1, w2)
    if r is not None:
        return r
    for q in _FALLBACKS:
        r = _pair_rotation(matvec(q, u1), matvec(q, u2), w1, w2)
        if r is not None:
            return matmul(r, q)
    # three independent fallbacks all being degenerate has never been observed
    raise AngleMismatch("could not construct a rotation for the given pairs")

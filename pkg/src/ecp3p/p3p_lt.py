"""Lambda Twist P3P baseline.

Port of the published Lambda Twist solver: the two quadrics in the unknown
distances are combined into a degenerate pencil member, found from one real
root of a cubic; its eigen-decomposition (one eigenvalue is known to be
zero) splits it into two planes, and each plane gives at most two solutions.

The cubic root comes from :func:`ecp3p.roots.cubic_one_real_root`, the same
routine the elliptic-curve solver relies on.  The original's Gauss-Newton
refinement of the distances is deliberately left out so both solvers are
compared without extra polishing.
"""

from __future__ import annotations

import math
from typing import List, Tuple

from . import geom3 as g3
from .errors import SolverFailure
from .p3p_ec import DEFAULT_CONFIG, P3PProblem, P3PSolution, _dedup
from .roots import cubic_one_real_root


def _root2real(b: float, c: float) -> Tuple[bool, float, float]:
    # roots of x^2 + b x + c, larger magnitude branch computed first
    v = b * b - 4.0 * c
    if v < 0.0:
        return False, 0.5 * b, 0.5 * b
    y = math.sqrt(v)
    if b < 0.0:
        return True, 0.5 * (-b + y), 0.5 * (-b - y)
    return True, 2.0 * c / (-b + y), 2.0 * c / (-b - y)


def _eig_known0(x):
    """Eigenpairs of a symmetric 3x3 matrix known to have one zero eigenvalue.

    Returns ``(e1, e2), (v1, v2)`` with ``|e1| >= |e2|``; the null vector is
    not needed by the caller.
    """
    (x00, x01, x02), (_, x11, x12), (_, _, x22) = x
    b = -x00 - x11 - x22
    c = -x01 * x01 - x02 * x02 - x12 * x12 + x00 * (x11 + x22) + x11 * x22
    _, e1, e2 = _root2real(b, c)
    if abs(e1) < abs(e2):
        e1, e2 = e2, e1

    mx0011 = -x00 * x11
    prec_0 = x01 * x12 - x02 * x11
    prec_1 = x01 * x02 - x00 * x12
    x01_sq = x01 * x01

    vecs = []
    for e in (e1, e2):
        den = e * (x00 + x11) + mx0011 - e * e + x01_sq
        if den == 0.0:
            raise SolverFailure("singular eigenvector system")
        tmp = 1.0 / den
        a1 = -(e * x02 + prec_0) * tmp
        a2 = -(e * x12 + prec_1) * tmp
        rn = 1.0 / math.sqrt(a1 * a1 + a2 * a2 + 1.0)
        vecs.append((a1 * rn, a2 * rn, rn))
    return (e1, e2), vecs


def solve_lt(p: P3PProblem) -> List[P3PSolution]:
    """Distance triples by the Lambda Twist method (0 to 4 solutions).

    Raises
    ------
    SolverFailure
        If the cubic is degenerate (vanishing leading coefficient) or the
        eigenvectors cannot be formed.
    """
    y1, y2, y3 = p.v_hat
    b12 = -2.0 * g3.dot(y1, y2)
    b13 = -2.0 * g3.dot(y1, y3)
    b23 = -2.0 * g3.dot(y2, y3)
    s = p.side_len
    a12 = s[2] * s[2]
    a13 = s[1] * s[1]
    a23 = s[0] * s[0]

    c31 = -0.5 * b13
    c23 = -0.5 * b23
    c12 = -0.5 * b12
    blob = c12 * c23 * c31 - 1.0
    s31_sq = 1.0 - c31 * c31
    s23_sq = 1.0 - c23 * c23
    s12_sq = 1.0 - c12 * c12

    p3 = a13 * (a23 * s31_sq - a13 * s23_sq)
    p2 = 2.0 * blob * a23 * a13 + a13 * (2.0 * a12 + a13) * s23_sq + a23 * (a23 - a12) * s31_sq
    p1 = a23 * (a13 - a23) * s12_sq - a12 * a12 * s23_sq - 2.0 * a12 * (blob * a23 + a13 * s23_sq)
    p0 = a12 * (a12 * s23_sq - a23 * s12_sq)
    if p3 == 0.0:
        raise SolverFailure("degenerate cubic")
    g = cubic_one_real_root((1.0, p2 / p3, p1 / p3, p0 / p3))

    A00 = a23 * (1.0 - g)
    A01 = a23 * b12 * 0.5
    A02 = a23 * b13 * g * -0.5
    A11 = a23 - a12 + a13 * g
    A12 = b23 * (a13 * g - a12) * 0.5
    A22 = g * (a13 - a23) - a12
    A = ((A00, A01, A02), (A01, A11, A12), (A02, A12, A22))

    (L0, L1), (v1, v2) = _eig_known0(A)
    if L0 == 0.0:
        raise SolverFailure("zero leading eigenvalue")
    v = math.sqrt(max(0.0, -L1 / L0))

    found = []
    for sgn in (v, -v):
        den = sgn * v2[0] - v1[0]
        if den == 0.0:
            continue
        w2 = 1.0 / den
        w0 = (v1[1] - sgn * v2[1]) * w2
        w1 = (v1[2] - sgn * v2[2]) * w2
        aden = (a13 - a12) * w1 * w1 - a12 * b13 * w1 - a12
        if aden == 0.0:
            continue
        a = 1.0 / aden
        b = (a13 * b12 * w1 - a12 * b13 * w0 - 2.0 * w0 * w1 * (a12 - a13)) * a
        c = ((a13 - a12) * w0 * w0 + a13 * b12 * w0 + a13) * a
        if b * b - 4.0 * c < 0.0:
            continue
        _, tau1, tau2 = _root2real(b, c)
        for tau in (tau1, tau2):
            if tau <= 0.0:
                continue
            d = a23 / (tau * (b23 + tau) + 1.0)
            if d <= 0.0:
                continue
            l2 = math.sqrt(d)
            l3 = tau * l2
            l1 = w0 * l2 + w1 * l3
            if l1 >= 0.0:
                found.append((l1, l2, l3))

    sols = []
    for dist in found:
        pts = (g3.scale(dist[0], y1), g3.scale(dist[1], y2), g3.scale(dist[2], y3))
        n = g3.cross(g3.sub(pts[1], pts[0]), g3.sub(pts[2], pts[0]))
        nn = g3.norm(n)
        if nn > 0.0:
            n = g3.scale(1.0 / nn, n)
            if g3.dot(n, y1) < 0.0:
                n = g3.scale(-1.0, n)
        sols.append(P3PSolution(dist=dist, points=pts, plane_normal=n))
    return _dedup(sols, DEFAULT_CONFIG.dedup_tol)

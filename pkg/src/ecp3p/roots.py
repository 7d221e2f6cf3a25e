"""Real roots of cubic and quartic polynomials.

Coefficient sequences are ordered highest degree first, the same convention
as :func:`numpy.polyval`.

Both P3P solvers funnel their single "hard" root through
:func:`cubic_one_real_root`: a safeguarded Newton-Raphson iteration inside a
sign-change bracket.  Quartics go through Ferrari's factorization into two
quadratics, with the resolvent cubic handled by the same routine.
"""

from __future__ import annotations

import math
from typing import List, Sequence

from .errors import DegreeDrop, NonCubic

MAX_NEWTON_ITERS = 64
POLISH_STEPS = 2
MERGE_TOL = 1e-9
_EPS = 2.220446049250313e-16


def _cubic_bracket(b: float, c: float, d: float):
    """Bracket [lo, hi] around the largest real root of t^3 + b t^2 + c t + d.

    The cubic is increasing on the returned bracket.  Also returns a starting
    guess from a second-order expansion about the nearest stationary point.
    """
    f = lambda t: ((t + b) * t + c) * t + d  # noqa: E731
    bound = 1.0 + max(abs(b), abs(c), abs(d))  # Cauchy bound
    disc = b * b - 3.0 * c
    if disc > 0.0:
        v = math.sqrt(disc)
        t1 = (-b - v) / 3.0  # local max
        t2 = (-b + v) / 3.0  # local min
        f2 = f(t2)
        if f2 <= 0.0:
            return t2, bound, t2 + math.sqrt(-f2 / v), f2 == 0.0
        f1 = f(t1)
        return -bound, t1, t1 - math.sqrt(f1 / v), f1 == 0.0
    infl = -b / 3.0
    fi = f(infl)
    if fi == 0.0:
        return infl, infl, infl, True
    # near a flat inflection the cubic behaves like (t - infl)^3 + fi
    guess = infl - math.copysign(abs(fi) ** (1.0 / 3.0), fi)
    if fi > 0.0:
        return -bound, infl, guess, False
    return infl, bound, guess, False


def cubic_one_real_root(coeffs: Sequence[float]) -> float:
    """Return one real root of ``c3 t^3 + c2 t^2 + c1 t + c0``.

    The root returned is the largest real root.  The polynomial is first made
    monic; the start point is the stationary point (or inflection point) on
    the side where the Cauchy-bounded bracket changes sign, and Newton steps
    that would leave the bracket are replaced by bisection.  The iteration
    stops once the residual is at the rounding level of the individual terms,
    the step stalls, or after 64 iterations.

    Parameters
    ----------
    coeffs : sequence of 4 floats
        ``(c3, c2, c1, c0)``.

    Raises
    ------
    NonCubic
        If ``c3 == 0``.
    """
    c3, c2, c1, c0 = (float(x) for x in coeffs)
    if c3 == 0.0:
        raise NonCubic("leading coefficient is zero")
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    lo, hi, t, exact = _cubic_bracket(b, c, d)
    if exact:
        return t
    if not lo < t < hi:
        t = 0.5 * (lo + hi)
    ab, ac, ad = abs(b), abs(c), abs(d)
    for _ in range(MAX_NEWTON_ITERS):
        fx = ((t + b) * t + c) * t + d
        if fx == 0.0:
            return t
        if fx > 0.0:
            hi = t
        else:
            lo = t
        at = abs(t)
        # residual at the rounding level of the individual terms
        size = ((at + ab) * at + ac) * at + ad
        if abs(fx) <= 4.0 * _EPS * size or hi - lo <= _EPS * max(1.0, at):
            break
        dfx = (3.0 * t + 2.0 * b) * t + c
        step = fx / dfx if dfx != 0.0 else math.inf
        tn = t - step
        if not lo < tn < hi:
            tn = 0.5 * (lo + hi)
        if tn == t:
            break
        t = tn
    # final polish, kept only when it helps
    fx = ((t + b) * t + c) * t + d
    dfx = (3.0 * t + 2.0 * b) * t + c
    if dfx != 0.0:
        tn = t - fx / dfx
        if abs(((tn + b) * tn + c) * tn + d) < abs(fx):
            t = tn
    return t


def _quadratic_real_roots(p: float, q: float, tol: float) -> List[float]:
    # roots of x^2 + p x + q, with slightly negative discriminants (|.| <= tol)
    # treated as a double root
    disc = p * p - 4.0 * q
    if disc < 0.0:
        if disc < -tol:
            return []
        disc = 0.0
    s = math.sqrt(disc)
    w = -0.5 * (p + math.copysign(s, p))
    if w == 0.0:
        return [0.0, 0.0]
    return [w, q / w]


def _polish(t: float, a: float, b: float, c: float, d: float) -> float:
    for _ in range(POLISH_STEPS):
        fx = (((t + a) * t + b) * t + c) * t + d
        dfx = ((4.0 * t + 3.0 * a) * t + 2.0 * b) * t + c
        if fx == 0.0 or dfx == 0.0:
            break
        tn = t - fx / dfx
        if abs((((tn + a) * tn + b) * tn + c) * tn + d) <= abs(fx):
            t = tn
        else:
            break
    return t


def quartic_real_roots(coeffs: Sequence[float]) -> List[float]:
    """All real roots of ``q4 t^4 + q3 t^3 + q2 t^2 + q1 t + q0``, ascending.

    Ferrari: the depressed quartic ``x^4 + p x^2 + q x + r`` is split as
    ``(x^2 + p/2 + m)^2 = (s x - k)^2`` with ``m`` the largest root of the
    resolvent cubic ``8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2``.  Each root found
    from the two quadratic factors receives two Newton polishing steps on the
    original polynomial.  Roots closer than 1e-9 (relative) are reported as
    repeated entries of their mean.

    Raises
    ------
    DegreeDrop
        If ``q4 == 0``.
    """
    q4, q3, q2, q1, q0 = (float(x) for x in coeffs)
    if q4 == 0.0:
        raise DegreeDrop("leading coefficient is zero")
    a, b, c, d = q3 / q4, q2 / q4, q1 / q4, q0 / q4

    shift = 0.25 * a
    aa = a * a
    p = b - 0.375 * aa
    q = c - 0.5 * a * b + 0.125 * aa * a
    r = d - 0.25 * a * c + 0.0625 * aa * b - 3.0 * aa * aa / 256.0

    scale = max(1.0, abs(p), math.sqrt(abs(r)), abs(q) ** (2.0 / 3.0))
    m = cubic_one_real_root((8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q))
    m = max(m, 0.0)
    s = math.sqrt(2.0 * m)
    if s > 1e-8 * math.sqrt(scale):
        k = q / (2.0 * s)
    else:
        # q ~ 0: nearly biquadratic, take k from the perfect-square condition
        k = math.copysign(math.sqrt(max(0.0, (m + 0.5 * p) ** 2 - r)), q)

    tol = 64.0 * _EPS * scale * scale
    xs = _quadratic_real_roots(-s, 0.5 * p + m + k, tol)
    xs += _quadratic_real_roots(s, 0.5 * p + m - k, tol)

    roots = sorted(_polish(x - shift, a, b, c, d) for x in xs)
    return _merge_close(roots)


def _merge_close(roots: List[float]) -> List[float]:
    if len(roots) < 2:
        return roots
    out: List[float] = []
    group = [roots[0]]
    for t in roots[1:]:
        if t - group[-1] < MERGE_TOL * max(1.0, abs(t)):
            group.append(t)
        else:
            mean = math.fsum(group) / len(group)
            out.extend([mean] * len(group))
            group = [t]
    mean = math.fsum(group) / len(group)
    out.extend([mean] * len(group))
    return out


def poly_real_roots(coeffs: Sequence[float], drop_tol: float = 0.0) -> List[float]:
    """Real roots of a polynomial of degree at most 4, ascending.

    Leading coefficients whose magnitude is at most ``drop_tol`` times the
    largest coefficient are treated as zero, so a quartic whose leading term
    has cancelled falls back to the cubic, quadratic or linear case.
    """
    cs = [float(c) for c in coeffs]
    if len(cs) > 5:
        raise ValueError("degree above 4")
    big = max((abs(c) for c in cs), default=0.0)
    if big == 0.0:
        return []
    while cs and abs(cs[0]) <= drop_tol * big:
        cs.pop(0)
    n = len(cs) - 1
    if n <= 0:
        return []
    if n == 4:
        return quartic_real_roots(cs)
    if n == 1:
        return [-cs[1] / cs[0]]
    if n == 2:
        b, c = cs[1] / cs[0], cs[2] / cs[0]
        return sorted(_quadratic_real_roots(b, c, 0.0))
    # cubic: one root from the shared routine, the rest from the deflated quadratic
    b, c, d = cs[1] / cs[0], cs[2] / cs[0], cs[3] / cs[0]
    r = cubic_one_real_root((1.0, b, c, d))
    qb = b + r
    qc = c + qb * r
    out = [r]
    for t in _quadratic_real_roots(qb, qc, 0.0):
        for _ in range(POLISH_STEPS):
            fx = ((t + b) * t + c) * t + d
            dfx = (3.0 * t + 2.0 * b) * t + c
            if fx == 0.0 or dfx == 0.0:
                break
            t -= fx / dfx
        out.append(t)
    return _merge_close(sorted(out))


def polyval(coeffs: Sequence[float], t: float) -> float:
    """Horner evaluation, highest degree first."""
    acc = 0.0
    for cf in coeffs:
        acc = acc * t + cf
    return acc

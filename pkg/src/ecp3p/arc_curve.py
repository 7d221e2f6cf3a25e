"""Algebra of the arc-sliding curve.

A great-circle arc slides with its end points ``a1``, ``a2`` pinned to the two
vertical great circles at azimuth ``-theta0`` and ``+theta0``.  A point
``a = alpha1 * a1 + alpha2 * a2`` on the moving circle traces a quartic on the
unit sphere.  This module evaluates that quartic, its projective form, the
deformation that pushes the two real singular points to infinity, and the
deformed quartic.  It also recovers the sliding state (the polar angles of
``a1`` and ``a2``) from a traced point.

The parameterisation of the end points is::

    a1 = (mu0 * nu1, -nu0 * nu1, mu1)
    a2 = (mu0 * nu2,  nu0 * nu2, mu2)

with ``mu0, nu0 = cos theta0, sin theta0`` and ``mu_i, nu_i = cos phi_i,
sin phi_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import (
    CoincidentSingularities,
    ComplexSingularities,
    DegenerateParams,
    EquatorPoint,
    ParallelAnchors,
)
from .geom3 import Mat3, Vec3

ETA_MIN = 1e-12
ALPHA_SPLIT_MIN = 1e-10
DIVISOR_MIN = 1e-12
EQUATOR_MIN = 1e-10


@dataclass(frozen=True)
class CurveParams:
    """Defining constants ``(mu0, nu0, alpha1, alpha2)`` of one sliding curve."""

    mu0: float
    nu0: float
    alpha1: float
    alpha2: float

    def __post_init__(self):
        if abs(self.mu0 * self.mu0 + self.nu0 * self.nu0 - 1.0) > 1e-12:
            raise DegenerateParams("mu0^2 + nu0^2 must equal 1")
        if not (0.0 < self.mu0 < 1.0 and 0.0 < self.nu0 < 1.0):
            raise DegenerateParams("theta0 must lie strictly inside (0, pi/2)")

    @classmethod
    def from_angle(cls, theta0: float, alpha1: float, alpha2: float) -> "CurveParams":
        return cls(math.cos(theta0), math.sin(theta0), alpha1, alpha2)

    @property
    def eta(self) -> float:
        d = self.alpha1 ** 2 - self.alpha2 ** 2
        return 1.0 - 4.0 * d * d * self.mu0 ** 2 * self.nu0 ** 2

    @property
    def beta(self) -> float:
        s = self.alpha1 ** 2 + self.alpha2 ** 2
        d = self.alpha1 ** 2 - self.alpha2 ** 2
        return s - d * d

    @property
    def split(self) -> float:
        """``k = 2 (alpha2^2 - alpha1^2) mu0 nu0``, the y-coordinate of both singularities."""
        return 2.0 * (self.alpha2 ** 2 - self.alpha1 ** 2) * self.mu0 * self.nu0


@dataclass(frozen=True)
class SlidingState:
    """Cosines and sines of the two polar angles ``phi1``, ``phi2``.

    ``nu1``/``nu2`` carry a sign: a negative value puts the end point on the
    far half of its great circle, which is how points beyond the arc and the
    antipodal configurations show up.
    """

    mu1: float
    nu1: float
    mu2: float
    nu2: float

    def unit_residual(self) -> float:
        """Largest ``|mu_i^2 + nu_i^2 - 1|``; zero for a genuine configuration."""
        return max(
            abs(self.mu1 * self.mu1 + self.nu1 * self.nu1 - 1.0),
            abs(self.mu2 * self.mu2 + self.nu2 * self.nu2 - 1.0),
        )


def anchor_points(p: CurveParams, s: SlidingState) -> Tuple[Vec3, Vec3]:
    """The two end points ``a1``, ``a2`` of the arc in sliding state ``s``."""
    return (
        (p.mu0 * s.nu1, -p.nu0 * s.nu1, s.mu1),
        (p.mu0 * s.nu2, p.nu0 * s.nu2, s.mu2),
    )


@dataclass(frozen=True)
class ProjQuartic6:
    """Projective quartic

    ``q (X^4 + Y^4) + xy X^2 Y^2 + xz X^2 Z^2 + yz Y^2 Z^2 + m XY (X^2 + Y^2 + Z^2) + z4 Z^4``.
    """

    q: float
    xy: float
    xz: float
    yz: float
    m: float
    z4: float

    def __call__(self, X: float, Y: float, Z: float) -> float:
        x2, y2, z2 = X * X, Y * Y, Z * Z
        return (
            self.q * (x2 * x2 + y2 * y2)
            + self.xy * x2 * y2
            + self.xz * x2 * z2
            + self.yz * y2 * z2
            + self.m * X * Y * (x2 + y2 + z2)
            + self.z4 * z2 * z2
        )

    def gradient(self, X: float, Y: float, Z: float) -> Vec3:
        x2, y2, z2 = X * X, Y * Y, Z * Z
        r2 = x2 + y2 + z2
        gx = (
            4.0 * self.q * x2 * X
            + 2.0 * self.xy * X * y2
            + 2.0 * self.xz * X * z2
            + self.m * Y * (r2 + 2.0 * x2)
        )
        gy = (
            4.0 * self.q * y2 * Y
            + 2.0 * self.xy * x2 * Y
            + 2.0 * self.yz * Y * z2
            + self.m * X * (r2 + 2.0 * y2)
        )
        gz = (
            2.0 * self.xz * x2 * Z
            + 2.0 * self.yz * y2 * Z
            + 2.0 * self.m * X * Y * Z
            + 4.0 * self.z4 * z2 * Z
        )
        return (gx, gy, gz)


@dataclass(frozen=True)
class ProjQuartic9:
    """Projective quartic ``uv U^2V^2 + uw U^2W^2 + vw V^2W^2 + m UVW^2 + w4 W^4``."""

    uv: float
    uw: float
    vw: float
    m: float
    w4: float

    def __call__(self, U: float, V: float, W: float) -> float:
        w2 = W * W
        return (
            self.uv * U * U * V * V
            + (self.uw * U * U + self.vw * V * V + self.m * U * V) * w2
            + self.w4 * w2 * w2
        )

    def gradient(self, U: float, V: float, W: float) -> Vec3:
        w2 = W * W
        return (
            2.0 * self.uv * U * V * V + (2.0 * self.uw * U + self.m * V) * w2,
            2.0 * self.uv * U * U * V + (2.0 * self.vw * V + self.m * U) * w2,
            2.0 * W * (self.uw * U * U + self.vw * V * V + self.m * U * V)
            + 4.0 * self.w4 * w2 * W,
        )


def sphere_residual(p: CurveParams, point: Vec3) -> float:
    """Left side of the sphere quartic at a unit point; zero on the curve.

    Only ``x`` and ``y`` enter, so the value is even under ``a -> -a`` and
    unchanged under ``z -> -z``.
    """
    x, y = point[0], point[1]
    mu2, nu2 = p.mu0 * p.mu0, p.nu0 * p.nu0
    a1s, a2s = p.alpha1 * p.alpha1, p.alpha2 * p.alpha2
    c = mu2 - nu2
    mn2 = mu2 * nu2
    h = nu2 * x * x - mu2 * y * y
    g = nu2 * x * x + mu2 * y * y
    return (
        (1.0 - c * c) * h * h
        + 4.0 * (1.0 - a1s - a2s) * mn2 * c * h
        - 4.0 * (a1s + a2s) * mn2 * g
        + 8.0 * (a2s - a1s) * mn2 * p.mu0 * p.nu0 * x * y
        - 4.0
        * (1.0 - (p.alpha1 + p.alpha2) ** 2)
        * (1.0 - (p.alpha1 - p.alpha2) ** 2)
        * mn2
        * mn2
    )


def proj_quartic6(p: CurveParams) -> ProjQuartic6:
    """Homogenised sphere quartic (its zero set agrees on the unit sphere)."""
    mu2, nu2 = p.mu0 * p.mu0, p.nu0 * p.nu0
    d = p.alpha1 ** 2 - p.alpha2 ** 2
    d2mn = d * d * mu2 * nu2
    beta = p.beta
    return ProjQuartic6(
        q=d2mn,
        xy=1.0 + 2.0 * d2mn,
        xz=(1.0 - 2.0 * beta * mu2) * nu2,
        yz=(1.0 - 2.0 * beta * nu2) * mu2,
        m=2.0 * d * p.mu0 * p.nu0,
        z4=(1.0 - (p.alpha1 + p.alpha2) ** 2)
        * (1.0 - (p.alpha1 - p.alpha2) ** 2)
        * mu2
        * nu2,
    )


def _check_divisors(p: CurveParams) -> None:
    if (
        abs(p.alpha1) < DIVISOR_MIN
        or abs(p.alpha2) < DIVISOR_MIN
        or abs(p.mu0 * p.nu0) < DIVISOR_MIN
    ):
        raise DegenerateParams("alpha1, alpha2 and mu0*nu0 must be nonzero")


def nu_recovery(p: CurveParams, point: Vec3) -> Tuple[float, float]:
    """Sines ``nu1``, ``nu2`` from the (linear) x/y components of ``a``."""
    _check_divisors(p)
    x, y = point[0], point[1]
    mn2 = 2.0 * p.mu0 * p.nu0
    return (
        (p.nu0 * x - p.mu0 * y) / (p.alpha1 * mn2),
        (p.nu0 * x + p.mu0 * y) / (p.alpha2 * mn2),
    )


def mu_recovery(p: CurveParams, point: Vec3) -> SlidingState:
    """Full sliding state: ``nu`` as in :func:`nu_recovery`, ``mu`` rationally.

    Raises
    ------
    EquatorPoint
        If ``|z| < 1e-10``; the cosines divide by ``z``.
    """
    nu1, nu2 = nu_recovery(p, point)
    x, y, z = point
    if abs(z) < EQUATOR_MIN:
        raise EquatorPoint("point lies on the equator")
    mu0, nu0 = p.mu0, p.nu0
    mu2, nu2_ = mu0 * mu0, nu0 * nu0
    a1s, a2s = p.alpha1 * p.alpha1, p.alpha2 * p.alpha2
    common = (nu2_ - mu2 - 1.0) * nu2_ * x * x + (mu2 - nu2_ - 1.0) * mu2 * y * y
    cross_term = 2.0 * mu0 * nu0 * x * y
    tau_p = common + cross_term + 2.0 * (1.0 + a1s - a2s) * mu2 * nu2_
    tau_m = common - cross_term + 2.0 * (1.0 - a1s + a2s) * mu2 * nu2_
    den = 4.0 * mu2 * nu2_ * z
    return SlidingState(
        mu1=tau_p / (p.alpha1 * den),
        nu1=nu1,
        mu2=tau_m / (p.alpha2 * den),
        nu2=nu2,
    )


def alphas_from_dots(q12: float, q1a: float, q2a: float) -> Tuple[float, float]:
    """Coefficients of ``a = alpha1 a1 + alpha2 a2`` from the three dot products.

    ``q12 = a1.a2``, ``q1a = a1.a``, ``q2a = a2.a``; solves the 2x2 Gram system.
    """
    den = 1.0 - q12 * q12
    if den < 1e-12:
        raise ParallelAnchors("a1 and a2 are (anti)parallel")
    return (q1a - q12 * q2a) / den, (q2a - q12 * q1a) / den


def _check_singular(p: CurveParams) -> None:
    if p.eta < ETA_MIN:
        raise ComplexSingularities(f"eta = {p.eta!r} is not positive")
    if abs(abs(p.alpha1) - abs(p.alpha2)) < ALPHA_SPLIT_MIN:
        raise CoincidentSingularities("|alpha1| == |alpha2|")


def _eps(p: CurveParams) -> float:
    # 1 - sqrt(eta) without cancellation: (1 - eta) / (1 + sqrt(eta)) = k^2 / (1 + sqrt(eta))
    k = p.split
    return k * k / (1.0 + math.sqrt(p.eta))


def singularities(p: CurveParams) -> Tuple[Vec3, Vec3]:
    """The two real double points ``(1 -/+ sqrt(eta), k, 0)`` at infinity.

    The ``1 - sqrt(eta)`` point comes first so that it matches the first
    column of :func:`deformation`.
    """
    _check_singular(p)
    k = p.split
    e = _eps(p)
    return (e, k, 0.0), (2.0 - e, k, 0.0)


@dataclass(frozen=True)
class Deformation:
    """Projective map ``(U, V, W) -> (X, Y, Z) = M (U, V, W)``."""

    M: Mat3
    M_inv: Mat3
    lambda1: float
    lambda2: float
    lambda3: float


def deformation(
    p: CurveParams, lambdas: Optional[Tuple[float, float, float]] = None
) -> Deformation:
    """Matrix sending ``(1:0:0)``, ``(0:1:0)`` to the singularities, ``(0:0:1)`` to itself.

    By default each column is scaled to unit length.  ``lambdas`` overrides
    the three column scales (any nonzero values give a birationally
    equivalent deformed curve).
    """
    _check_singular(p)
    k = p.split
    e = _eps(p)
    f = 2.0 - e  # 1 + sqrt(eta)
    if lambdas is None:
        l1 = 1.0 / math.sqrt(2.0 * e)
        l2 = 1.0 / math.sqrt(2.0 * f)
        l3 = 1.0
    else:
        l1, l2, l3 = (float(v) for v in lambdas)
        if l1 == 0.0 or l2 == 0.0 or l3 == 0.0:
            raise DegenerateParams("column scales must be nonzero")
    M = ((l1 * e, l2 * f, 0.0), (l1 * k, l2 * k, 0.0), (0.0, 0.0, l3))
    # 2x2 block inverse; its determinant is l1 l2 k (e - f) = -2 l1 l2 k sqrt(eta)
    det2 = l1 * l2 * k * (e - f)
    M_inv = (
        (l2 * k / det2, -l2 * f / det2, 0.0),
        (-l1 * k / det2, l1 * e / det2, 0.0),
        (0.0, 0.0, 1.0 / l3),
    )
    return Deformation(M=M, M_inv=M_inv, lambda1=l1, lambda2=l2, lambda3=l3)


def proj_quartic9(p: CurveParams, d: Deformation) -> ProjQuartic9:
    """Deformed quartic: the projective quartic composed with ``M``, divided by ``nu0^2``.

    The ``U^2 W^2`` and ``V^2 W^2`` brackets are evaluated in a rearranged
    form that avoids the cancellation of ``eta - 2 beta mu0^2 - (..) sqrt(eta)``
    when the singularities are nearly opposite.
    """
    mu2, nu2 = p.mu0 * p.mu0, p.nu0 * p.nu0
    a1s, a2s = p.alpha1 * p.alpha1, p.alpha2 * p.alpha2
    dd = (a1s - a2s) ** 2
    eta = p.eta
    beta = p.beta
    k = p.split
    e = _eps(p)
    g = 1.0 - 2.0 * (a1s + a2s) * mu2
    tail = k * k * (mu2 - nu2) / (2.0 * nu2)
    br_minus = e * g + tail
    br_plus = (2.0 - e) * g + tail
    l1, l2, l3 = d.lambda1, d.lambda2, d.lambda3
    l3s = l3 * l3
    return ProjQuartic9(
        uv=16.0 * dd * mu2 * eta * eta * l1 * l1 * l2 * l2,
        uw=2.0 * br_minus * l1 * l1 * l3s,
        vw=2.0 * br_plus * l2 * l2 * l3s,
        m=-32.0 * dd * beta * mu2 * mu2 * nu2 * l1 * l2 * l3s,
        w4=(1.0 - (p.alpha1 + p.alpha2) ** 2)
        * (1.0 - (p.alpha1 - p.alpha2) ** 2)
        * mu2
        * l3s
        * l3s,
    )


def proj_quartic9_printed(p: CurveParams, d: Deformation) -> ProjQuartic9:
    """Same coefficients with the two brackets in their direct (unrearranged) form.

    Kept as an independent reference for tests; loses accuracy when ``eta``
    is close to 1.
    """
    mu2 = p.mu0 * p.mu0
    s = p.alpha1 ** 2 + p.alpha2 ** 2
    eta, beta = p.eta, p.beta
    se = math.sqrt(eta)
    base = eta - 2.0 * beta * mu2
    g = (1.0 - 2.0 * s * mu2) * se
    q9 = proj_quartic9(p, d)
    l3s = d.lambda3 * d.lambda3
    return ProjQuartic9(
        uv=q9.uv,
        uw=2.0 * (base - g) * d.lambda1 ** 2 * l3s,
        vw=2.0 * (base + g) * d.lambda2 ** 2 * l3s,
        m=q9.m,
        w4=q9.w4,
    )


def sphere_point(p: CurveParams, s: SlidingState) -> Vec3:
    """``alpha1 a1 + alpha2 a2`` for the given sliding state."""
    a1, a2 = anchor_points(p, s)
    return (
        p.alpha1 * a1[0] + p.alpha2 * a2[0],
        p.alpha1 * a1[1] + p.alpha2 * a2[1],
        p.alpha1 * a1[2] + p.alpha2 * a2[2],
    )

"""Quartics ``A u^2 v^2 + B u^2 + C v^2 + D + 2 E uv`` and their Jacobi form.

The family contains the deformed sliding curve as well as Edwards and
twisted Edwards curves.  For nonzero ``A, B, C, D`` a member is birational to
the Jacobi quartic ``xi^2 = (1 - omega^2)(1 - kappa^2 omega^2)``.

Everything is carried in squared form (``rho``, ``kappa^2``, ``omega^2``,
``xi^2``) so that negative coefficients never call for complex square roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .arc_curve import ProjQuartic9
from .errors import DegenerateCurve, NegativeDelta, ZeroCoefficient, ZeroRho

COEF_MIN = 1e-12
DELTA_NEG_TOL = 1e-12


@dataclass(frozen=True)
class QForm:
    """Coefficients of ``A u^2 v^2 + B u^2 + C v^2 + D + 2 E uv``."""

    A: float
    B: float
    C: float
    D: float
    E: float

    def __call__(self, u: float, v: float) -> float:
        return self.A * u * u * v * v + self.B * u * u + self.C * v * v + self.D + 2.0 * self.E * u * v

    def homogeneous(self, U: float, V: float, W: float) -> float:
        w2 = W * W
        return (
            self.A * U * U * V * V
            + (self.B * U * U + self.C * V * V + 2.0 * self.E * U * V) * w2
            + self.D * w2 * w2
        )

    def homogeneous_gradient(self, U: float, V: float, W: float):
        w2 = W * W
        return (
            2.0 * self.A * U * V * V + (2.0 * self.B * U + 2.0 * self.E * V) * w2,
            2.0 * self.A * U * U * V + (2.0 * self.C * V + 2.0 * self.E * U) * w2,
            2.0 * W * (self.B * U * U + self.C * V * V + 2.0 * self.E * U * V)
            + 4.0 * self.D * w2 * W,
        )

    @classmethod
    def twisted_edwards(cls, a: float, d: float) -> "QForm":
        """``a u^2 + v^2 = 1 + d u^2 v^2`` rewritten as ``-d u^2 v^2 + a u^2 + v^2 - 1 = 0``."""
        return cls(A=-d, B=a, C=1.0, D=-1.0, E=0.0)


@dataclass(frozen=True)
class JacobiConstants:
    delta: float
    rho: float
    kappa2: float
    f: float
    g: float

    def resolvent_residual(self) -> float:
        """``1 + f rho + g rho^2``, scaled by its largest term."""
        t1 = self.f * self.rho
        t2 = self.g * self.rho * self.rho
        return abs(1.0 + t1 + t2) / max(1.0, abs(t1), abs(t2))


def qform_from_proj9(p9: ProjQuartic9) -> QForm:
    """Dehomogenise at ``W = 1``; the ``UVW^2`` coefficient is ``2E``."""
    return QForm(A=p9.uv, B=p9.uw, C=p9.vw, D=p9.w4, E=0.5 * p9.m)


def _discriminant(q: QForm) -> Tuple[float, float]:
    ad, bc = q.A * q.D, q.B * q.C
    t = ad + bc - q.E * q.E
    return t, t * t - 4.0 * ad * bc


def jacobi_constants(q: QForm) -> JacobiConstants:
    """``delta``, ``rho`` and ``kappa^2`` of the map to Jacobi form.

    ``rho`` is the root of ``A B rho^2 + (AD + BC - E^2) rho + C D = 0`` taken
    with the principal ``sqrt(delta)``; when the linear coefficient is
    negative the equivalent product form is used to avoid cancellation.

    Raises
    ------
    ZeroCoefficient
        If any of ``A, B, C, D`` is below 1e-12 in magnitude.
    NegativeDelta
        If ``delta < -1e-12`` (``rho`` would be complex).
    """
    if min(abs(q.A), abs(q.B), abs(q.C), abs(q.D)) < COEF_MIN:
        raise ZeroCoefficient("A, B, C and D must all be nonzero")
    t, delta = _discriminant(q)
    if delta < 0.0:
        if delta < -DELTA_NEG_TOL:
            raise NegativeDelta(f"delta = {delta!r}")
        delta = 0.0
    sd = math.sqrt(delta)
    ab, cd = q.A * q.B, q.C * q.D
    if t >= 0.0:
        rho = (t + sd) / (-2.0 * ab)
    else:
        rho = -2.0 * cd / (t - sd)
    if rho == 0.0:
        raise ZeroRho("rho vanished")
    return JacobiConstants(
        delta=delta,
        rho=rho,
        kappa2=ab * rho * rho / cd,
        f=t / cd,
        g=ab / cd,
    )


def jacobi_map(q: QForm, k: JacobiConstants, point: Tuple[float, float]) -> Tuple[float, float]:
    """Image ``(omega^2, xi^2)`` of a point ``(u, v)`` on the Jacobi quartic.

    ``omega = u / sqrt(rho)`` and ``xi = ((A u^2 + C) v + E u) / sqrt(-C D)``;
    only their squares are returned.
    """
    if k.rho == 0.0:
        raise ZeroRho("rho vanished")
    cd = q.C * q.D
    if cd == 0.0:
        raise ZeroCoefficient("C*D must be nonzero")
    u, v = point
    num = (q.A * u * u + q.C) * v + q.E * u
    return u * u / k.rho, num * num / (-cd)


def jacobi_residual(q: QForm, k: JacobiConstants, point: Tuple[float, float]) -> float:
    """``xi^2 - (1 - omega^2)(1 - kappa^2 omega^2)`` at ``point``."""
    w2, x2 = jacobi_map(q, k, point)
    return x2 - (1.0 - w2) * (1.0 - k.kappa2 * w2)


def j_invariant_kappa(kappa2: float) -> float:
    """``16 (k^4 + 14 k^2 + 1)^3 / (k^2 (1 - k^2)^4)`` with ``k^2 = kappa2``."""
    if abs(kappa2) < 1e-12 or abs(1.0 - kappa2) < 1e-12:
        raise DegenerateCurve(f"kappa^2 = {kappa2!r} gives a singular curve")
    return 16.0 * (kappa2 * kappa2 + 14.0 * kappa2 + 1.0) ** 3 / (
        kappa2 * (1.0 - kappa2) ** 4
    )


def j_invariant(q: QForm) -> float:
    """j-invariant straight from the coefficients.

    ``16 (AD^2 + BC^2 + E^4 + 14 ABCD - 2 (AD + BC) E^2)^3 / (ABCD delta^2)``
    where ``AD^2`` means ``(A D)^2``.  The value is unchanged by a common
    scaling of ``A..E``, so the coefficients are first divided by the largest
    magnitude and the degeneracy tests below apply to that normalised form.

    Raises
    ------
    DegenerateCurve
        If ``delta`` vanishes, ``kappa^2`` is 0 or 1, or the denominator is
        below 1e-20.
    """
    big = max(abs(q.A), abs(q.B), abs(q.C), abs(q.D), abs(q.E))
    if big == 0.0 or not math.isfinite(big):
        raise DegenerateCurve("coefficients are all zero or not finite")
    q = QForm(q.A / big, q.B / big, q.C / big, q.D / big, q.E / big)
    if min(abs(q.A), abs(q.B), abs(q.C), abs(q.D)) < COEF_MIN:
        raise ZeroCoefficient("A, B, C and D must all be nonzero")
    t, delta = _discriminant(q)
    ad, bc = q.A * q.D, q.B * q.C
    abcd = ad * bc
    den = abcd * delta * delta
    if abs(delta) < 1e-12 or abs(den) < 1e-20:
        raise DegenerateCurve("vanishing discriminant")
    if delta > 0.0:
        kappa2 = jacobi_constants(q).kappa2
        if abs(kappa2) < 1e-12 or abs(1.0 - kappa2) < 1e-12:
            raise DegenerateCurve(f"kappa^2 = {kappa2!r}")
    e2 = q.E * q.E
    num = ad * ad + bc * bc + e2 * e2 + 14.0 * abcd - 2.0 * (ad + bc) * e2
    return 16.0 * num ** 3 / den

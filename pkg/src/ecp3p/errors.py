"""Exception types raised by ecp3p.

Every error derives from :class:`GeometryError` (itself a ``ValueError``) so
callers that only care about "the numbers were unusable" can catch one class.
"""


class GeometryError(ValueError):
    """Base class for all numerical-geometry failures in this package."""


# geom3
class AngleMismatch(GeometryError):
    pass


# roots
class NonCubic(GeometryError):
    pass


class DegreeDrop(GeometryError):
    pass


# arc_curve
class DegenerateParams(GeometryError):
    pass


class EquatorPoint(GeometryError):
    pass


class ParallelAnchors(GeometryError):
    pass


class ComplexSingularities(GeometryError):
    pass


class CoincidentSingularities(GeometryError):
    pass


# quartic_family
class ZeroCoefficient(GeometryError):
    pass


class NegativeDelta(GeometryError):
    pass


class ZeroRho(GeometryError):
    pass


class DegenerateCurve(GeometryError):
    pass


# solvers
class DegenerateViewLines(GeometryError):
    pass


class NoViableFrame(GeometryError):
    """No view line can be rotated vertically without a near-zero divisor."""


class BackfacingPlane(GeometryError):
    pass


class SolverFailure(GeometryError):
    """Lambda Twist hit a degenerate cubic or eigen decomposition."""


# bench
class PlaneThroughOrigin(GeometryError):
    pass


class ExhaustedSampling(GeometryError):
    pass

"""Elliptic-curve P3P solver, a Lambda Twist baseline and a benchmark harness."""

from .errors import (
    AngleMismatch,
    BackfacingPlane,
    CoincidentSingularities,
    ComplexSingularities,
    DegenerateCurve,
    DegenerateParams,
    DegenerateViewLines,
    DegreeDrop,
    EquatorPoint,
    ExhaustedSampling,
    GeometryError,
    NegativeDelta,
    NoViableFrame,
    NonCubic,
    ParallelAnchors,
    PlaneThroughOrigin,
    SolverFailure,
    ZeroCoefficient,
    ZeroRho,
)
from .p3p_ec import P3PProblem, P3PSolution, SolverConfig, solve
from .p3p_lt import solve_lt

__version__ = "0.1.0"

__all__ = [
    "P3PProblem",
    "P3PSolution",
    "SolverConfig",
    "solve",
    "solve_lt",
    "GeometryError",
    "AngleMismatch",
    "BackfacingPlane",
    "CoincidentSingularities",
    "ComplexSingularities",
    "DegenerateCurve",
    "DegenerateParams",
    "DegenerateViewLines",
    "DegreeDrop",
    "EquatorPoint",
    "ExhaustedSampling",
    "NegativeDelta",
    "NoViableFrame",
    "NonCubic",
    "ParallelAnchors",
    "PlaneThroughOrigin",
    "SolverFailure",
    "ZeroCoefficient",
    "ZeroRho",
]

"""Synthetic P3P accuracy benchmark.

A trial starts from a planar triangle centred on its circumcircle, tilts it
about a random horizontal axis so that the attack angle lands in the
configured range, lifts it along +z, and finally turns it about another
random horizontal axis by at most 90 degrees.  Each solver sees only the unit
view vectors and the side lengths; its best candidate is scored against the
true points.

Randomness is counter based: trial ``t`` of seed ``s`` draws from a Philox
stream keyed by ``(s, t)``, so any subset of trials can be replayed alone and
serial and parallel runs agree exactly.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import geom3 as g3
from .errors import ExhaustedSampling, GeometryError, PlaneThroughOrigin
from .geom3 import Vec3
from .p3p_ec import P3PProblem, P3PSolution, solve
from .p3p_lt import solve_lt

SENTINEL_FAILURE = -1.0  # solver raised
SENTINEL_EMPTY = -2.0  # solver returned no candidates
MAX_ATTEMPTS = 10_000
ANGLE_SLACK_DEG = 1e-9
HIST_DECADES = tuple(range(2, 16))  # bucket 1e-k holds [1e-k, 1e-(k-1))
METHODS = ("lt", "ec")


class ConfigError(ValueError):
    """Invalid benchmark configuration."""


def _unit_circle_triangle(deg: Sequence[float]) -> Tuple[Vec3, Vec3, Vec3]:
    return tuple(  # type: ignore[return-value]
        (math.cos(math.radians(a)), math.sin(math.radians(a)), 0.0) for a in deg
    )


# (0, 1) is the point at 90 degrees
TRIANGLES = {
    "acute": _unit_circle_triangle((90.0, 80.0, 230.0)),
    "obtuse": _unit_circle_triangle((90.0, 70.0, 300.0)),
}


def load_triangle(path: str) -> Tuple[Vec3, Vec3, Vec3]:
    """Three ``x y`` lines -> vertices in the z = 0 plane."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ConfigError(f"{path}: expected 'x y', got {line!r}")
            try:
                rows.append((float(parts[0]), float(parts[1]), 0.0))
            except ValueError as exc:
                raise ConfigError(f"{path}: {exc}") from None
    if len(rows) != 3:
        raise ConfigError(f"{path}: expected 3 vertices, got {len(rows)}")
    return tuple(rows)  # type: ignore[return-value]


def circumcenter(points: Sequence[Vec3]) -> Vec3:
    a = g3.sub(points[0], points[2])
    b = g3.sub(points[1], points[2])
    axb = g3.cross(a, b)
    den = 2.0 * g3.dot(axb, axb)
    if den == 0.0:
        raise GeometryError("collinear triangle")
    num = g3.cross(g3.sub(g3.scale(g3.dot(a, a), b), g3.scale(g3.dot(b, b), a)), axb)
    return g3.add(points[2], g3.scale(1.0 / den, num))


@dataclass(frozen=True)
class TrialConfig:
    method: str = "both"
    triangle: str = "acute"
    attack_range: Tuple[float, float] = (0.0, 30.0)
    lift_range: Tuple[float, float] = (100.0, 200.0)
    trials: int = 1000
    seed: int = 0
    vertices: Optional[Tuple[Vec3, Vec3, Vec3]] = None

    def __post_init__(self):
        if self.method not in ("ec", "lt", "both"):
            raise ConfigError(f"unknown method {self.method!r}")
        amin, amax = self.attack_range
        if not (0.0 <= amin <= amax < 90.0):
            raise ConfigError("need 0 <= attack_min <= attack_max < 90")
        lmin, lmax = self.lift_range
        if not (0.0 < lmin <= lmax) or not math.isfinite(lmax):
            raise ConfigError("need 0 < lift_min <= lift_max")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not (0 <= self.seed < 2 ** 64):
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.vertices is None and self.triangle not in TRIANGLES:
            raise ConfigError(f"unknown triangle {self.triangle!r}")
        verts = self.base_triangle()
        a = g3.sub(verts[1], verts[0])
        b = g3.sub(verts[2], verts[0])
        if g3.norm(g3.cross(a, b)) <= 1e-12 * max(g3.dot(a, a), g3.dot(b, b), 1e-300):
            raise ConfigError("triangle is degenerate")

    def base_triangle(self) -> Tuple[Vec3, Vec3, Vec3]:
        return self.vertices if self.vertices is not None else TRIANGLES[self.triangle]

    def methods(self) -> Tuple[str, ...]:
        return METHODS if self.method == "both" else (self.method,)


@dataclass
class TrialStats:
    method: str
    trials: int
    successes: int
    failures: int
    mean: float
    std: float
    min: float
    max: float
    time_s: float
    hist: Dict[int, int] = field(default_factory=dict)  # decade k -> count in [1e-k, 1e-(k-1))
    underflow: int = 0
    overflow: int = 0


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for trial ``index``: Philox keyed by ``(seed, index)``."""
    return np.random.Generator(np.random.Philox(key=int(seed) | (int(index) << 64)))


def attack_angle(points: Sequence[Vec3]) -> float:
    """Angle in degrees between the circumcentre direction and the plane normal.

    Raises
    ------
    PlaneThroughOrigin
        If the triangle's plane passes within 1e-12 of the origin.
    """
    P = [g3.vec(p) for p in points]
    n = g3.cross(g3.sub(P[1], P[0]), g3.sub(P[2], P[0]))
    nn = g3.norm(n)
    if nn == 0.0:
        raise GeometryError("collinear triangle")
    n = g3.scale(1.0 / nn, n)
    if abs(g3.dot(P[0], n)) < 1e-12:
        raise PlaneThroughOrigin("control plane contains the camera centre")
    c = circumcenter(P)
    along = g3.dot(c, n)
    perp = g3.norm(g3.sub(c, g3.scale(along, n)))
    return math.degrees(math.atan2(perp, abs(along)))


def generate_trial(cfg: TrialConfig, rng: np.random.Generator) -> Tuple[Vec3, Vec3, Vec3]:
    """Control points for one trial (see module docstring).

    The base triangle is shifted so its circumcentre is the origin; then the
    first rotation's tilt equals the attack angle, which is still measured
    after the lift and resampled if it falls outside the range.

    Raises
    ------
    ExhaustedSampling
        If no tilt within 10^4 draws gives an admissible attack angle.
    """
    base = cfg.base_triangle()
    cc = circumcenter(base)
    tri = [g3.sub(p, cc) for p in base]
    amin, amax = cfg.attack_range
    lmin, lmax = cfg.lift_range

    psi1 = rng.uniform(0.0, 2.0 * math.pi)
    lift = rng.uniform(lmin, lmax)
    for _ in range(MAX_ATTEMPTS):
        tilt = math.radians(rng.uniform(amin, amax))
        r1 = g3.random_rotation_xy_axis(tilt, psi1)
        lifted = [g3.add(g3.matvec(r1, p), (0.0, 0.0, lift)) for p in tri]
        ang = attack_angle(lifted)
        if amin - ANGLE_SLACK_DEG <= ang <= amax + ANGLE_SLACK_DEG:
            break
    else:
        raise ExhaustedSampling(f"no admissible tilt in {MAX_ATTEMPTS} draws")
    psi2 = rng.uniform(0.0, 2.0 * math.pi)
    turn = math.radians(rng.uniform(-90.0, 90.0))
    r2 = g3.random_rotation_xy_axis(turn, psi2)
    return tuple(g3.matvec(r2, p) for p in lifted)  # type: ignore[return-value]


def relative_error(solutions: Sequence[P3PSolution], truth: Sequence[Vec3]) -> float:
    """Smallest ``sqrt(sum_i |p_i - P_i|^2 / |P_i|^2)`` over the candidates.

    Returns ``SENTINEL_EMPTY`` (negative) for an empty candidate list.
    """
    if not solutions:
        return SENTINEL_EMPTY
    T = [g3.vec(p) for p in truth]
    t2 = [g3.dot(p, p) for p in T]
    best = math.inf
    for s in solutions:
        acc = 0.0
        for p, q, q2 in zip(s.points, T, t2):
            d = g3.sub(p, q)
            acc += g3.dot(d, d) / q2
        best = min(best, math.sqrt(acc))
    return best


_SOLVERS = {"ec": solve, "lt": solve_lt}


def solve_and_check(method: str, points: Sequence[Vec3]) -> Tuple[float, float]:
    """Run one solver on the view of ``points``; returns ``(error, seconds)``.

    The error is negative when the solver raised (``SENTINEL_FAILURE``) or
    found nothing (``SENTINEL_EMPTY``).  Only the solver call is timed.
    """
    problem = P3PProblem.from_points(points)
    fn = _SOLVERS[method]
    t0 = time.perf_counter()
    try:
        sols = fn(problem)
    except GeometryError:
        return SENTINEL_FAILURE, time.perf_counter() - t0
    dt = time.perf_counter() - t0
    return relative_error(sols, points), dt


def _run_chunk(args) -> Dict[str, Tuple[List[float], float]]:
    cfg, start, stop = args
    out = {m: ([], 0.0) for m in cfg.methods()}
    for t in range(start, stop):
        pts = generate_trial(cfg, trial_rng(cfg.seed, t))
        for m in cfg.methods():
            errs, tsum = out[m]
            e, dt = solve_and_check(m, pts)
            errs.append(e)
            out[m] = (errs, tsum + dt)
    return out


def summarize(method: str, errors: Sequence[float], time_s: float) -> TrialStats:
    """Statistics over the valid (non-negative) errors, in trial order."""
    good = [e for e in errors if e >= 0.0]
    n = len(good)
    hist = {k: 0 for k in HIST_DECADES}
    under = over = 0
    for e in good:
        if e >= 0.1:
            over += 1
        elif e < 1e-15:
            under += 1
        else:
            k = min(15, max(2, int(math.floor(-math.log10(e))) + 1))
            # guard against log10 rounding at the decade edges
            if e < 10.0 ** (-k):
                k += 1
            elif e >= 10.0 ** (1 - k):
                k -= 1
            hist[k] += 1
    if n:
        mean = math.fsum(good) / n
        var = math.fsum((e - mean) ** 2 for e in good) / n
        lo, hi = min(good), max(good)
    else:
        mean = var = lo = hi = math.nan
    return TrialStats(
        method=method,
        trials=len(errors),
        successes=n,
        failures=len(errors) - n,
        mean=mean,
        std=math.sqrt(var),
        min=lo,
        max=hi,
        time_s=time_s,
        hist=hist,
        underflow=under,
        overflow=over,
    )


def run_trials(cfg: TrialConfig, serial: bool = False, workers: Optional[int] = None):
    """Per-method error lists (trial order) and summed solver times."""
    if serial:
        chunks = [(cfg, 0, cfg.trials)]
        parts = [_run_chunk(c) for c in chunks]
    else:
        nproc = workers or os.cpu_count() or 1
        size = max(1, min(2000, -(-cfg.trials // (4 * nproc))))
        chunks = [(cfg, s, min(cfg.trials, s + size)) for s in range(0, cfg.trials, size)]
        with Pool(nproc) as pool:
            parts = pool.map(_run_chunk, chunks)
    merged = {}
    for m in cfg.methods():
        errs: List[float] = []
        for part in parts:
            errs.extend(part[m][0])
        merged[m] = (errs, math.fsum(part[m][1] for part in parts))
    return merged


def run_experiment(
    cfg: TrialConfig, serial: bool = False, workers: Optional[int] = None
) -> Dict[str, TrialStats]:
    """Run every trial of ``cfg``; returns statistics keyed by method (LT first)."""
    merged = run_trials(cfg, serial=serial, workers=workers)
    return {m: summarize(m, errs, t) for m, (errs, t) in merged.items()}


# ---------------------------------------------------------------- formatting

CSV_COLUMNS = (
    "attack_min", "attack_max", "lift_min", "lift_max", "triangle", "method",
    "trials", "successes", "failures", "avg_err", "std_err", "min_err",
    "max_err", "time_s",
)  # fmt: skip
HIST_COLUMNS = tuple(f"hist_1e-{k}" for k in HIST_DECADES)


def _g(x: float) -> str:
    return repr(float(x))


def csv_rows(cfg: TrialConfig, stats: Dict[str, TrialStats], hist: bool = False) -> List[List[str]]:
    rows = []
    for m, s in stats.items():
        row = [
            _g(cfg.attack_range[0]), _g(cfg.attack_range[1]),
            _g(cfg.lift_range[0]), _g(cfg.lift_range[1]),
            cfg.triangle, m.upper(), str(s.trials), str(s.successes),
            str(s.failures), _g(s.mean), _g(s.std), _g(s.min), _g(s.max),
            f"{s.time_s:.6f}",
        ]  # fmt: skip
        if hist:
            row += [str(s.hist[k]) for k in HIST_DECADES]
        rows.append(row)
    return rows


def _clip(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return "0" if abs(x) < 1e-17 else f"{x:.2e}"


def format_table(cfg: TrialConfig, stats: Dict[str, TrialStats], hist: bool = False) -> str:
    """Rows in the layout attack / lift / triangle / method / avg / std / min / max / time."""
    head = f"{'attack':>7} {'lift':>9} {'triangle':>9} {'method':>6} {'average':>10} {'std dev':>10} {'min':>10} {'max':>10} {'time':>9} {'fail':>5}"
    lines = [head]
    att = f"{cfg.attack_range[0]:g}-{cfg.attack_range[1]:g}"
    lift = f"{cfg.lift_range[0]:g}-{cfg.lift_range[1]:g}"
    for m, s in stats.items():
        lines.append(
            f"{att:>7} {lift:>9} {cfg.triangle:>9} {m.upper():>6} {_clip(s.mean):>10} "
            f"{_clip(s.std):>10} {_clip(s.min):>10} {_clip(s.max):>10} {s.time_s:>9.3f} {s.failures:>5}"
        )
        if hist:
            lines.append(
                "        "
                + " ".join(f"1e-{k}:{s.hist[k]}" for k in HIST_DECADES)
                + f" under:{s.underflow} over:{s.overflow}"
            )
    return "\n".join(lines)

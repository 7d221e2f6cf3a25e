import math
import random

import pytest

from ecp3p import bench
from ecp3p import geom3 as g3
from ecp3p.bench import (
    SENTINEL_EMPTY,
    TRIANGLES,
    ConfigError,
    TrialConfig,
    attack_angle,
    circumcenter,
    generate_trial,
    relative_error,
    run_experiment,
    solve_and_check,
    summarize,
    trial_rng,
)
from ecp3p.errors import ExhaustedSampling, PlaneThroughOrigin
from ecp3p.p3p_ec import P3PProblem, P3PSolution, solve


def dists(pts):
    return [g3.norm(g3.sub(pts[j], pts[i])) for i, j in ((0, 1), (1, 2), (2, 0))]


def test_named_triangles():
    deg = {"acute": (90, 80, 230), "obtuse": (90, 70, 300)}
    for name, angles in deg.items():
        for v, a in zip(TRIANGLES[name], angles):
            assert v == pytest.approx((math.cos(math.radians(a)), math.sin(math.radians(a)), 0.0), abs=1e-15)
            assert abs(g3.norm(v) - 1.0) <= 1e-15
    assert TRIANGLES["acute"][0] == pytest.approx((0.0, 1.0, 0.0), abs=1e-16)


@pytest.mark.parametrize(
    "kw",
    [
        dict(attack_range=(10.0, 5.0)),
        dict(attack_range=(-1.0, 5.0)),
        dict(attack_range=(0.0, 90.0)),
        dict(lift_range=(0.0, 10.0)),
        dict(lift_range=(20.0, 10.0)),
        dict(trials=0),
        dict(seed=-1),
        dict(seed=2**64),
        dict(method="both-ish"),
        dict(triangle="scalene"),
        dict(triangle="custom", vertices=((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0))),
    ],
)
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        TrialConfig(**kw)


def test_attack_angle_examples():
    h, d = 7.0, 2.5
    tri = [(math.cos(a), math.sin(a), h) for a in (0.3, 2.0, 4.1)]
    assert attack_angle(tri) == pytest.approx(0.0, abs=1e-12)
    shifted = [(x + d, y, z) for x, y, z in tri]
    assert attack_angle(shifted) == pytest.approx(math.degrees(math.atan(d / h)), abs=1e-12)
    with pytest.raises(PlaneThroughOrigin):
        attack_angle([(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (-1.0, -1.0, 0.0)])


def test_circumcenter_equidistant():
    rng = random.Random(51)
    for _ in range(100):
        pts = [tuple(rng.uniform(-3, 3) for _ in range(3)) for _ in range(3)]
        c = circumcenter(pts)
        r = [g3.norm(g3.sub(p, c)) for p in pts]
        assert max(r) - min(r) <= 1e-10 * max(r)


def test_zero_attack_generation():
    cfg = TrialConfig(attack_range=(0.0, 0.0), lift_range=(10.0, 20.0))
    for t in range(50):
        pts = generate_trial(cfg, trial_rng(0, t))
        assert attack_angle(pts) <= 1e-9


@pytest.mark.parametrize("triangle", ["acute", "obtuse"])
@pytest.mark.parametrize("attack", [(0.0, 30.0), (30.0, 60.0), (12.0, 12.5)])
def test_generated_attack_in_range_and_congruent(triangle, attack):
    cfg = TrialConfig(triangle=triangle, attack_range=attack, lift_range=(10.0, 200.0))
    base = dists(TRIANGLES[triangle])
    n = 10_000 if attack == (0.0, 30.0) else 2000
    for t in range(n):
        pts = generate_trial(cfg, trial_rng(5, t))
        a = attack_angle(pts)
        assert attack[0] - 1e-9 <= a <= attack[1] + 1e-9
        for x, y in zip(dists(pts), base):
            assert abs(x - y) <= 1e-12


def test_custom_triangle_recentered():
    verts = ((0.0, 0.0, 0.0), (4.0, 0.0, 0.0), (0.0, 3.0, 0.0))
    cfg = TrialConfig(triangle="file:345", vertices=verts, attack_range=(0.0, 0.0), lift_range=(50.0, 50.0))
    pts = generate_trial(cfg, trial_rng(1, 0))
    assert attack_angle(pts) <= 1e-9
    assert sorted(dists(pts)) == pytest.approx([3.0, 4.0, 5.0], abs=1e-12)
    # lift of 50 along the circumcentre direction before the final turn
    assert g3.norm(circumcenter(pts)) == pytest.approx(50.0, rel=1e-12)


def test_trial_streams_replayable():
    a = trial_rng(123, 7).random(5)
    b = trial_rng(123, 7).random(5)
    c = trial_rng(123, 8).random(5)
    d = trial_rng(124, 7).random(5)
    assert (a == b).all()
    assert not (a == c).any() and not (a == d).any()


def test_relative_error_examples():
    pts = ((1.0, 2.0, 30.0), (-1.0, 0.5, 25.0), (0.3, -2.0, 28.0))
    p = P3PProblem.from_points(pts)
    exact = P3PSolution(dist=tuple(g3.norm(x) for x in pts), points=pts, plane_normal=(0.0, 0.0, 1.0))
    assert relative_error([exact], pts) == 0.0
    bumped = tuple(g3.scale(1.01, x) for x in pts)
    one = P3PSolution(dist=(0.0, 0.0, 0.0), points=bumped, plane_normal=(0.0, 0.0, 1.0))
    assert relative_error([one], pts) == pytest.approx(math.sqrt(3) * 0.01, rel=1e-12)
    assert relative_error([one, exact], pts) == 0.0
    assert relative_error([], pts) < 0
    err, dt = solve_and_check("ec", pts)
    assert 0.0 <= err <= 1e-10 and dt >= 0.0
    assert err == relative_error(solve(p), pts)


def test_summarize_buckets_and_sentinels():
    errs = [0.1, 0.0999, 1e-3, 9.99e-4, 1e-15, 9.9e-16, 0.0, 5.0, -1.0, SENTINEL_EMPTY]
    s = summarize("ec", errs, 0.5)
    assert s.trials == 10 and s.successes == 8 and s.failures == 2
    assert s.overflow == 2  # 0.1 and 5.0
    assert s.underflow == 2  # 9.9e-16 and 0.0
    assert s.hist[2] == 1  # 0.0999 in [1e-2, 1e-1)
    assert s.hist[3] == 1 and s.hist[4] == 1
    assert s.hist[15] == 1
    assert sum(s.hist.values()) + s.underflow + s.overflow == s.successes
    good = [e for e in errs if e >= 0]
    assert s.mean == math.fsum(good) / 8
    assert s.min == 0.0 and s.max == 5.0


def test_summarize_decade_edges():
    rng = random.Random(52)
    for k in range(2, 16):
        s = summarize("lt", [10.0 ** -k, 10.0 ** -k * (1 + 1e-15), 10.0 ** (1 - k) * (1 - 1e-15)], 0.0)
        assert s.hist[k] == 3
    vals = [10 ** rng.uniform(-17, 1) for _ in range(5000)]
    s = summarize("lt", vals, 0.0)
    for k in range(2, 16):
        assert s.hist[k] == sum(1 for v in vals if 10.0 ** -k <= v < 10.0 ** (1 - k))


def test_single_trial_matches_direct_solve():
    cfg = TrialConfig(method="ec", attack_range=(0.0, 0.0), trials=1, seed=99)
    st = run_experiment(cfg, serial=True)["ec"]
    assert st.successes == 1 and st.failures == 0
    pts = generate_trial(cfg, trial_rng(99, 0))
    assert st.mean == relative_error(solve(P3PProblem.from_points(pts)), pts)


def _error_fields(stats):
    return {m: (s.trials, s.successes, s.failures, s.mean, s.std, s.min, s.max, dict(s.hist), s.underflow, s.overflow) for m, s in stats.items()}


def test_determinism_serial_and_parallel():
    cfg = TrialConfig(method="both", trials=300, seed=2024, triangle="obtuse")
    a = run_experiment(cfg, serial=True)
    b = run_experiment(cfg, serial=True)
    c = run_experiment(cfg, workers=2)
    assert list(a) == ["lt", "ec"]
    assert _error_fields(a) == _error_fields(b) == _error_fields(c)
    for s in a.values():
        assert s.successes + s.failures == s.trials
        assert sum(s.hist.values()) + s.underflow + s.overflow == s.successes


def test_exhausted_sampling(monkeypatch):
    monkeypatch.setattr(bench, "attack_angle", lambda pts: 89.0)
    cfg = TrialConfig(trials=1)
    with pytest.raises(ExhaustedSampling):
        generate_trial(cfg, trial_rng(0, 0))


def test_table_and_csv_format():
    cfg = TrialConfig(method="ec", trials=3, seed=1)
    st = {"ec": summarize("ec", [0.0, 1e-18, 2.5e-12], 0.25)}
    table = bench.format_table(cfg, st, hist=True)
    lines = table.splitlines()
    assert lines[0].split()[:4] == ["attack", "lift", "triangle", "method"]
    row = lines[1].split()
    assert row[:4] == ["0-30", "100-200", "acute", "EC"]
    assert row[6] == "0"  # min below 1e-17 is shown as 0
    assert "1e-12:1" in lines[2]
    rows = bench.csv_rows(cfg, st, hist=True)
    assert len(rows[0]) == len(bench.CSV_COLUMNS) + len(bench.HIST_COLUMNS)
    assert float(rows[0][11]) == 0.0 and float(rows[0][12]) == 2.5e-12
    assert bench.HIST_COLUMNS[0] == "hist_1e-2" and bench.HIST_COLUMNS[-1] == "hist_1e-15"

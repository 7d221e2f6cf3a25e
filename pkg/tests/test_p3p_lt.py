import math
import random

import pytest

from ecp3p import geom3 as g3
from ecp3p.bench import relative_error
from ecp3p.p3p_ec import P3PProblem, solve
from ecp3p.p3p_lt import _eig_known0, _root2real, solve_lt
from test_p3p_ec import best_match, equilateral_points, forward_problems, random_rotation


@pytest.mark.parametrize("h", [0.5, 2.0, 10.0, 150.0])
def test_equilateral_matches_ec(h):
    p = P3PProblem.from_points(equilateral_points(h))
    want = math.sqrt(h * h + 1.0)
    lt = solve_lt(p)
    assert best_match((want, want, want), lt) <= 1e-9
    ec = solve(p)
    assert best_match(ec[0].dist, lt) <= 1e-9


def test_root2real():
    ok, a, b = _root2real(-3.0, 2.0)
    assert ok and sorted((a, b)) == pytest.approx([1.0, 2.0])
    ok, a, b = _root2real(3.0, 2.0)
    assert ok and sorted((a, b)) == pytest.approx([-2.0, -1.0])
    assert not _root2real(0.0, 1.0)[0]


def test_eig_known0():
    rng = random.Random(41)
    for _ in range(200):
        # symmetric rank-2 matrix from two random eigenpairs
        R = random_rotation(rng)
        e1, e2 = rng.uniform(-5, 5), rng.uniform(-5, 5)
        if abs(abs(e1) - abs(e2)) < 0.1 or min(abs(e1), abs(e2)) < 0.1:
            continue
        cols = [tuple(R[i][c] for i in range(3)) for c in range(3)]
        X = tuple(tuple(e1 * cols[0][i] * cols[0][j] + e2 * cols[1][i] * cols[1][j] for j in range(3)) for i in range(3))
        (l1, l2), (v1, v2) = _eig_known0(X)
        big, small = (e1, e2) if abs(e1) >= abs(e2) else (e2, e1)
        assert l1 == pytest.approx(big, abs=1e-9) and l2 == pytest.approx(small, abs=1e-9)
        for lam, v in ((l1, v1), (l2, v2)):
            Xv = g3.matvec(X, v)
            assert g3.norm(g3.sub(Xv, g3.scale(lam, v))) <= 1e-8


def test_lt_forward_accuracy_and_validity():
    errs = []
    for pts, p in forward_problems(2000):
        sols = solve_lt(p)
        errs.append(relative_error(sols, pts))
        for s in sols:
            assert all(d > 0 for d in s.dist)
            for pt, v in zip(s.points, p.v_hat):
                assert g3.norm(g3.sub(g3.normalize(pt), v)) <= 1e-10
    assert sum(1 for e in errs if 0.0 <= e <= 1e-6) >= 0.999 * len(errs)


def test_cross_solver_agreement():
    agree = total = 0
    for pts, p in forward_problems(10_000, attack=(0.0, 30.0), seed=9):
        ec, lt = solve(p), solve_lt(p)
        total += 1
        if not ec or not lt:
            continue
        # best solution of each, judged against the truth
        truth = tuple(g3.norm(P) for P in pts)
        b_ec = min(ec, key=lambda s: max(abs(a - b) / b for a, b in zip(s.dist, truth)))
        b_lt = min(lt, key=lambda s: max(abs(a - b) / b for a, b in zip(s.dist, truth)))
        if max(abs(a - b) / b for a, b in zip(b_lt.dist, b_ec.dist)) <= 1e-6:
            agree += 1
    assert agree >= 0.99 * total


def test_lt_rotation_and_scale():
    rng = random.Random(42)
    for pts, p in forward_problems(200, lift=(2.0, 20.0)):
        R = random_rotation(rng)
        q = P3PProblem(tuple(g3.normalize(g3.matvec(R, v)) for v in p.v_hat), p.side_len)
        a, b = solve_lt(p), solve_lt(q)
        assert len(a) == len(b)
        for s in a:
            assert best_match(s.dist, b) <= 1e-8
        # dyadic scales keep the scaled inputs exact; other factors perturb
        # them by an ulp, which the unrefined method amplifies like any
        # other input rounding
        for f in (2.0 ** -10, 8.0, 2.0 ** 13):
            c = solve_lt(P3PProblem(p.v_hat, tuple(f * x for x in p.side_len)))
            assert len(c) == len(a)
            for s in a:
                assert best_match(tuple(f * d for d in s.dist), c) <= 1e-10

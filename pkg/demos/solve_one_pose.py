"""Solve one synthetic camera pose with both P3P solvers.

Run with ``python3 demos/solve_one_pose.py``.
"""

# %%
import math

import numpy as np

from ecp3p import P3PProblem, solve, solve_lt

# three control points about 12 units in front of the camera
points = np.array([
    [0.4, 1.1, 12.0],
    [-1.3, -0.2, 11.5],
    [0.9, -1.0, 12.8],
])
problem = P3PProblem.from_points(points)
print("view vectors:\n", np.array(problem.v_hat))
print("side lengths:", np.round(problem.side_len, 6))

# %%
# every candidate lists the distances along the three view vectors
truth = np.linalg.norm(points, axis=1)
for name, fn in (("EC", solve), ("LT", solve_lt)):
    sols = fn(problem)
    print(f"\n{name}: {len(sols)} candidate(s)")
    for s in sols:
        rel = np.abs(np.array(s.dist) - truth) / truth
        print("  dist", np.round(s.dist, 9), " max rel. diff from truth %.1e" % rel.max())

# %%
# the reconstructed points reproduce the triangle
best = min(solve(problem), key=lambda s: np.abs(np.array(s.dist) - truth).max())
P = np.array(best.points)
for i, j in ((1, 2), (2, 0), (0, 1)):
    print(f"|P{i}P{j}| = {np.linalg.norm(P[j] - P[i]):.12f}")
print("plane normal:", np.round(best.plane_normal, 12))
print("angle of normal to the optical axis: %.3f deg" % math.degrees(math.acos(best.plane_normal[2])))

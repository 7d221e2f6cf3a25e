"""Walk through the curve algebra behind the elliptic-curve solver.

Run with ``python3 demos/sliding_curve.py``.
"""

# %%
import math

import numpy as np

from ecp3p.arc_curve import (
    CurveParams,
    SlidingState,
    deformation,
    mu_recovery,
    proj_quartic6,
    proj_quartic9,
    singularities,
    sphere_point,
    sphere_residual,
)
from ecp3p.quartic_family import jacobi_constants, j_invariant, qform_from_proj9

# an arc whose end points slide on two great circles 80 degrees apart
theta0, phi1, phi2, alpha1 = math.radians(40), math.radians(70), math.radians(55), 0.6
mu0, nu0 = math.cos(theta0), math.sin(theta0)
# alpha2 makes alpha1*a1 + alpha2*a2 a unit vector
q = (mu0**2 - nu0**2) * math.sin(phi1) * math.sin(phi2) + math.cos(phi1) * math.cos(phi2)
alpha2 = -alpha1 * q + math.sqrt((alpha1 * q) ** 2 - alpha1**2 + 1)
p = CurveParams(mu0, nu0, alpha1, alpha2)
state = SlidingState(math.cos(phi1), math.sin(phi1), math.cos(phi2), math.sin(phi2))
a = sphere_point(p, state)
print("traced point:", np.round(a, 12), " |a| =", np.linalg.norm(a))
print("sphere quartic residual: %.1e" % sphere_residual(p, a))
print("eta = %.6f, beta = %.6f" % (p.eta, p.beta))

# %%
# recover the sliding state from the traced point alone
r = mu_recovery(p, a)
print("recovered (mu1, nu1, mu2, nu2):", np.round([r.mu1, r.nu1, r.mu2, r.nu2], 12))
print("actual                        :", np.round([state.mu1, state.nu1, state.mu2, state.nu2], 12))

# %%
# the projective curve has two real double points on the line at infinity
q6 = proj_quartic6(p)
for s in singularities(p):
    u = np.array(s) / np.linalg.norm(s)
    print("singularity", np.round(u, 6), " value %.1e  |grad| %.1e" % (q6(*u), np.linalg.norm(q6.gradient(*u))))

# %%
# push them to (1:0:0) and (0:1:0); the result has only five monomials
d = deformation(p)
q9 = proj_quartic9(p, d)
print("deformed coefficients:", q9)
b = np.linalg.solve(np.array(d.M), a)
print("deformed curve at the pulled-back point: %.1e" % q9(*(b / np.linalg.norm(b))))

# %%
qf = qform_from_proj9(q9)
k = jacobi_constants(qf)
print("Jacobi form: kappa^2 = %.9f, j = %.9e" % (k.kappa2, j_invariant(qf)))
# the j-invariant does not depend on how the deformation columns are scaled
other = qform_from_proj9(proj_quartic9(p, deformation(p, (1.5, 1.0, 0.7))))
print("with other column scales:          j = %.9e" % j_invariant(other))

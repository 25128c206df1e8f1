"""
Fejér steps and pseudo-projection
=================================

A Fejér step moves a point by the average of the orthogonal corrections
towards every violated half-space. Iterating it converges to a point of
the polytope, though usually not the nearest one.
"""

import numpy as np

from apexlp import SolverParams, displacement, fejer_step, pseudo_projection
from apexlp.generator import unit_hypercube

square = unit_hypercube(2).problem

# %%
# From (2, 2) both upper caps are violated, each by 1. The displacement is
# the mean of the two corrections.
phi, h = displacement(square, [2.0, 2.0])
print("violated rows:", h, "displacement:", phi)

# %%
# Repeated steps halve the excess every sweep.
x = np.array([2.0, 2.0])
for k in range(5):
    x = fejer_step(square, x)
    print(k + 1, x)

# %%
# Distance to any feasible point shrinks at every step (Fejér monotonicity).
rng = np.random.default_rng(0)
y = rng.uniform(0, 1, 2)
x = np.array([3.0, -1.5])
for _ in range(6):
    nxt = fejer_step(square, x)
    print(f"{np.linalg.norm(x - y):.6f} -> {np.linalg.norm(nxt - y):.6f}")
    x = nxt

# %%
# The pseudo-projection stops once a sweep moves the point less than
# ``eps_proj``.
res = pseudo_projection(square, [3.0, -1.5], SolverParams())
print(res.point, res.sweeps, res.converged)

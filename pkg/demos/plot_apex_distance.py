"""
How far away should the apex point be?
======================================

The apex point is placed at distance ``sigma`` from the Quest point along
the objective direction. It has to lie outside the polytope, otherwise
there is nothing to project.
"""

import numpy as np

from apexlp import ApexInsideM, SolverParams, objective_direction, solve
from apexlp.generator import model_problem
from apexlp.oracle import simplex_solve

inst = model_problem(4)
p = inst.problem
e_c = objective_direction(p)

# %%
# The extent of the polytope along ``e_c`` follows from two LPs: maximize
# and minimize ``<e_c, x>``.
hi = simplex_solve(p).objective / np.linalg.norm(p.c)
lo = -simplex_solve(type(p)(p.A, p.b, -p.c)).objective / np.linalg.norm(p.c)
print(f"M spans [{lo:.2f}, {hi:.2f}] along e_c, width {hi - lo:.2f}")

# %%
# Once ``sigma`` pushes the apex past ``hi`` it is certainly outside M.
# Smaller values can work too, since the ray from the Quest point may leave
# M well before reaching ``hi``. A far apex lands ``u_0`` closer to the
# optimum and leaves fewer Target iterations.
for sigma in (50.0, 250.0, 320.0, 400.0, 800.0, 80000.0):
    try:
        rep = solve(p, params=SolverParams(sigma=sigma))
        print(f"sigma={sigma:8.0f}: objective {rep.objective:.4f} "
              f"in {rep.iterations} iterations")
    except ApexInsideM:
        print(f"sigma={sigma:8.0f}: apex inside M")

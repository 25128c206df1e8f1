"""
Solving the model problem
=========================

The model problem caps every coordinate at 200 and bounds the total from
both sides. Its optimum is known in closed form, so it is a handy check for
the apex method at any dimension.
"""

import numpy as np

from apexlp import solve
from apexlp.generator import model_problem
from apexlp.oracle import simplex_solve

# %%
# Build the n = 4 instance and look at its rows. The first four cap each
# coordinate, then come the two sum rows and the nonnegativity rows.
inst = model_problem(4)
p = inst.problem
print(p.A)
print(p.b)

# %%
# Solve it. Quest moves the origin into the polytope, the apex point is
# projected back onto the boundary, and Target climbs along the boundary.
rep = solve(p)
print("solution  ", rep.solution)
print("objective ", rep.objective, "known", inst.known_objective)
print("iterations", rep.iterations, rep.termination.value)

# %%
# Every Target iterate strictly improves the objective.
objs = np.array([r.objective for r in rep.trace])
print("strictly increasing:", bool(np.all(np.diff(objs) > 0)))
print("first iterates:", objs[:5])

# %%
# The simplex oracle gives the same vertex.
ref = simplex_solve(p)
print("simplex   ", ref.optimum, ref.objective)

# %%
# Scale up. Iterations grow quickly with n: past n = 16 the walk spends
# thousands of short steps creeping along faces near the optimum (n = 32
# takes about 5600 iterations and over 20 seconds).
for n in (2, 4, 8, 16):
    inst = model_problem(n)
    rep = solve(inst.problem)
    err = abs(rep.objective - inst.known_objective) / inst.known_objective
    print(f"n={n:3d} iterations={rep.iterations:5d} rel.err={err:.1e} "
          f"time={rep.wall_time:.2f}s")

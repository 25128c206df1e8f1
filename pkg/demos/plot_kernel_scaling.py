"""
Scaling the displacement kernel
===============================

The displacement sums row corrections over fixed 256-row chunks. Worker
threads take contiguous runs of chunks and the partial sums are combined
in chunk order, so every worker count gives the same bits.
"""

import numpy as np

from apexlp import parallel_displacement
from apexlp.bench import run_bench, usable_cpus
from apexlp.generator import model_problem

p = model_problem(2000).problem
x = np.random.default_rng(1).uniform(-100, 400, p.n)

# %%
# Same input, different worker counts, identical output.
ref, _ = parallel_displacement(p, x, 1)
for w in (2, 4, 8):
    phi, _ = parallel_displacement(p, x, w)
    print(w, phi.tobytes() == ref.tobytes())

# %%
# Timing only means something with several cores available.
print("usable CPUs:", usable_cpus())
for r in run_bench(2000, [1, 2, 4], sweeps=50):
    print(f"workers={r.workers} seconds={r.seconds:.3f} speedup={r.speedup:.2f}")

"""Bracketing the maximum ergodic average of a matrix cocycle.

The benchmark pair M0 = [[1,1],[0,1]], M1 = [[1,0],[1,1]] on the full
2-shift is the classic joint-spectral-radius example: the alternating
product M1 M0 has spectral radius phi^2, so the exact answer is log phi.
The bracket closes immediately because the spectral norm of each generator
is also phi.
"""

import math

import numpy as np

import ergopt as eo

space = eo.new_shift(2)
A = eo.MatrixCocycle(space, 2, 1, {
    (0,): np.array([[1.0, 1.0], [0.0, 1.0]]),
    (1,): np.array([[1.0, 0.0], [1.0, 1.0]]),
})

bracket = eo.beta_bracket(space, A, n_max=24, p_max=6)
phi = (1 + math.sqrt(5)) / 2

print("lower bound (best periodic orbit):", bracket.lower)
print("upper bound (word maxima):        ", bracket.upper)
print("log of the golden ratio:          ", math.log(phi))
print("witness cycle:", bracket.witness, " gap:", bracket.gap)

report = eo.matrix_candidates(space, A, n_max=24, p_max=6, slack=1e-6)
print("candidate maximizing cycles:", [str(c) for c in report.candidates])
print("unique at this resolution:  ", report.unique_at_resolution)

print("\nupper-bound series (n, U_n):")
for n, u in bracket.upper_series:
    print(f"  {n:2d}  {u:.12f}")

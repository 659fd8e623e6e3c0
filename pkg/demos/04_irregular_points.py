"""A point whose finite-time exponents refuse to converge.

Alternating ever-longer blocks of two cycles with exponents 0 and 1
(growth ratio 3) makes the finite-time exponent series swing between
roughly 0.2 and 0.8 forever, while an eventually periodic control point
converges.  Divergence is evidenced at finite depth, never proven.
"""

from fractions import Fraction

import ergopt as eo

space = eo.new_shift(2)
f = eo.ScalarPotential(space, 1, {(0,): Fraction(0), (1,): Fraction(1)})
A = eo.from_potential(f)

c0 = eo.make_cycle(space, (0,))
c1 = eo.make_cycle(space, (1,))
sched = eo.build_irregular_point(space, A, c0, c1, r=3.0, J=8)
print("block lengths:", sched.lengths)
print("total steps:  ", sched.total_length)

series = eo.finite_time_exponents(space, A, sched, sched.total_length)
print("\nexponent at each block boundary:")
for i in sched.block_end_indices():
    print(f"  n = {i:6d}  e_n = {series[i - 1]:.4f}")

lo, hi, gap = eo.block_oscillation(series, sched)
print(f"\ntail oscillation estimate: liminf ~ {lo:.3f}, limsup ~ {hi:.3f}, "
      f"gap {gap:.3f}")

control = eo.finite_time_exponents(space, A, ((), eo.make_cycle(space, (0, 1))), 10**4)
_, _, cgap = eo.oscillation(control)
print(f"control point (01)^inf: final-half oscillation {cgap:.2e} "
      f"(converges to 1/2)")

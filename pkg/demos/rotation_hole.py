"""An irrational rotation must eventually fall into a small hole.

The orbit of (-1, 0) under the rotation by arctan(4/3) is dense on the
circle, so it enters the disc of radius sqrt(u) around (1, 0).  Shrinking
the hole delays the entry, but not strictly at every step.
"""
from fractions import Fraction

from escapetime.core.algebraic import AlgebraicNumber
from escapetime.dynamics.diophantine import Angle, dirichlet_solve
from escapetime.dynamics.orbit import escape_time
from escapetime.semialg.families import gen_rotation_instance, rotation_start

for tau in range(1, 7):
    inst = gen_rotation_instance(1, 1, tau)
    x0 = rotation_start(1, 1, tau)
    x0[0], x0[1] = Fraction(-1), Fraction(0)
    t = escape_time(inst, x0, 10 ** 5).escape_time
    print(f"hole radius^2 = 1/2^{tau}: escapes after {t} steps")

# why the times repeat: good rational approximations of the angle are sparse
lam = AlgebraicNumber.gaussian(Fraction(3, 5), Fraction(4, 5))
for M in (10, 100, 1000):
    r = dirichlet_solve([Angle(lam)], M)
    print(f"M = {M:>4}: q = {r.q:>4}, p = {r.p[0]:>3}, |q phi - p| <= {float(r.error[1]):.3g}")

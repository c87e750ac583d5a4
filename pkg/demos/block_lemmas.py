"""Single Jordan blocks: measured event times next to the three block bounds.

For |lambda| = 1 the orbit grows polynomially, for |lambda| > 1 it grows
exponentially and for |lambda| < 1 it shrinks.  Each regime has its own
bound and its own notion of event.
"""
import random
from fractions import Fraction

from escapetime.dynamics.orbit import crossing_count
from escapetime.linalg.jordan import real_jordan
from escapetime.verify import check_block_case, jordan_block_matrix, random_block_case

rng = random.Random("demo")
for regime in ("poly", "exp", "shrink"):
    print(f"-- {regime}")
    for _ in range(4):
        case = random_block_case(rng, regime)
        out = check_block_case(case)
        lo, hi = out.bound.decimal_enclosure(4)
        print(f"  lambda={case.lam} k={case.k} eps={case.eps}: measured {out.measured}, bound in [{lo}, {hi}]")

# a 1x1 expanding block started below eps crosses upward once, although m^2 - m = 0
(c,) = crossing_count(real_jordan(jordan_block_matrix(2, 1)), [Fraction(1, 4)], Fraction(1), 10, jordan_coords=True)
print(f"[[2]] from 1/4 with eps = 1: {c.count} crossing(s), budget {c.budget}, corrected {c.corrected_budget}")

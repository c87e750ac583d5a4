"""Escape times of the additive family against the compact bound.

The family squares one coordinate into the next, so the set it must leave
grows doubly exponentially in n while the matrix stays tiny.  Run:

    python3 demos/additive_family.py
"""
from escapetime.bounds.constants import BoundConstants
from escapetime.verify import family_row

consts = BoundConstants()
print(f"{'(n, d, tau)':>12}  {'measured':>9}  {'2^(tau d^(n-1)) + 1':>20}  bound (6 digits)")
for n, d, tau in [(2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 2, 1), (3, 2, 2), (4, 2, 1)]:
    row = family_row("additive", n, d, tau, 10 ** 6, consts)
    closed = 2 ** (tau * d ** (n - 1)) + 1
    lo, hi = row.bound.decimal_enclosure(6)
    print(f"{str((n, d, tau)):>12}  {row.measured!s:>9}  {closed:>20}  [{lo}, {hi}]  {row.verdict}")

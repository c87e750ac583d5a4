"""Multiplicative relations decide which targets an orbit on the torus can reach.

With no relation the powers of lambda are dense on the circle; with i^4 = 1
they only visit four points.
"""
from fractions import Fraction

from escapetime.core.algebraic import AlgebraicNumber
from escapetime.dynamics.diophantine import kronecker_target_search
from escapetime.errors import TargetNotInClosure
from escapetime.relations import normal_form, relation_lattice

lam = AlgebraicNumber.gaussian(Fraction(3, 5), Fraction(4, 5))
i = AlgebraicNumber.gaussian(0, 1)

for name, lams in (("lambda", [lam]), ("i", [i]), ("lambda, lambda^2", [lam, lam * lam])):
    basis = relation_lattice(lams)
    nf = normal_form(basis, lams)
    print(f"{name:>17}: relations {basis.basis}, independent indices {nf.indices}, ell = {nf.ell}")

for eps in (Fraction(3, 10), Fraction(1, 10), Fraction(1, 100)):
    r = kronecker_target_search([lam], None, [Fraction(-1)], eps, 10 ** 5)
    print(f"lambda^t within {eps} of -1 first at t = {r.t}")

try:
    kronecker_target_search([i], relation_lattice([i]), [lam], Fraction(1, 10), 100)
except TargetNotInClosure as exc:
    print(f"i^t never approaches lambda: {exc}")

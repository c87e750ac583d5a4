"""Multiplicative relations among unit-circle algebraic numbers, and their normal form."""
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from escapetime.core.algebraic import AlgebraicNumber
from escapetime.core.poly import IntPolynomial
from escapetime.corpus import pythagorean_point
from escapetime.errors import NotModulusOne
from escapetime.relations import (default_search_bound, hnf_rows, in_lattice, is_relation, lipschitz_L,
                                  normal_form, relation_lattice, relations_from_normal_form)

F = Fraction
I = AlgebraicNumber.gaussian(0, 1)
LAM = AlgebraicNumber.gaussian(F(3, 5), F(4, 5))
LAM2 = LAM * LAM
OMEGA = next(r for r in AlgebraicNumber.roots_of(IntPolynomial((1, 1, 1))) if r.approx().imag > 0)


def test_lattice_examples():
    assert relation_lattice([I], 8).basis == [(4,)]
    assert relation_lattice([LAM], 20).basis == []
    (b,) = relation_lattice([LAM, LAM2], 10).basis
    assert b in ((2, -1), (-2, 1))


def test_default_bound_reaches_root_of_unity_orders():
    # degree 2 roots of unity have order at most 6
    assert default_search_bound([I]) >= 6
    assert relation_lattice([I]).basis == [(4,)]
    assert relation_lattice([OMEGA]).basis == [(3,)]


def test_not_modulus_one():
    with pytest.raises(NotModulusOne):
        relation_lattice([AlgebraicNumber.from_rational(2)], 3)


def test_normal_form_examples():
    nf = normal_form(relation_lattice([LAM, LAM2], 10), [LAM, LAM2])
    assert (nf.s, nf.indices, nf.ell, nf.eps[1], lipschitz_L(nf)) == (1, [0], 1, [2], 2)
    other = pythagorean_point(F(1, 4))  # (15 + 8i)/17
    free = normal_form(relation_lattice([LAM, other], 4), [LAM, other])
    assert (free.s, free.ell, lipschitz_L(free)) == (2, 1, 1)
    unit = normal_form(relation_lattice([I], 8), [I])
    assert (unit.s, unit.ell, unit.eps, lipschitz_L(unit)) == (0, 4, [[]], 4)
    assert unit.to_json()["L"] == 4


def test_round_trip_and_lattice_membership():
    lams = [LAM, LAM2, I]
    basis = relation_lattice(lams, 6)
    nf = normal_form(basis, lams)
    for v in relations_from_normal_form(nf):
        assert is_relation(lams, v)
        assert in_lattice(basis, v)
    assert in_lattice(basis, (0, 0, 8)) and not in_lattice(basis, (0, 0, 2))


def test_box_completeness_is_monotone():
    lams = [LAM, LAM2, I]
    small = relation_lattice(lams, 2)
    large = relation_lattice(lams, 5)
    for b in small.basis:
        assert in_lattice(large, b)


def test_independent_subset_has_no_relation_in_the_box():
    lams = [LAM, LAM2, I]
    bound = 4
    nf = normal_form(relation_lattice(lams, bound), lams)
    sub = [lams[j] for j in nf.indices]
    for beta in itertools.product(range(-bound, bound + 1), repeat=len(sub)):
        if any(beta):
            assert not is_relation(sub, beta)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_preserves_the_row_lattice(rows):
    ech = hnf_rows(rows, [2, 1, 0])
    # every input row is an integer combination of the echelon rows, and the ranks agree
    if not ech:
        assert all(not any(r) for r in rows)
        return
    A, B = Matrix(rows), Matrix(ech)
    assert A.rank() == B.rank() == len(ech)
    for r in rows:
        v = list(r)
        for e in ech:
            c = next(c for c in (2, 1, 0) if e[c])
            assert e[c] > 0
            if v[c] % e[c]:
                pytest.fail("input row not in the span of the echelon rows")
            q = v[c] // e[c]
            v = [a - q * b for a, b in zip(v, e)]
        assert not any(v)


def test_hidden_relation_is_found():
    # (4 + 3i)/5 = i * conj(lambda), so its fourth power times lambda^4 is 1
    other = pythagorean_point(F(1, 3))
    basis = relation_lattice([LAM, other], 4)
    assert in_lattice(basis, (4, 4))
    assert not in_lattice(basis, (1, 1))

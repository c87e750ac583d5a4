"""Exact arithmetic kernel: polynomials, root isolation, algebraic numbers."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from escapetime.core import roots as _roots
from escapetime.core.algebraic import AlgebraicNumber, alg_op, alg_sign, min_poly
from escapetime.core.factor import factor, is_irreducible
from escapetime.core.poly import IntPolynomial
from escapetime.core.rational import bitsize, fmt_rational, parse_rational, rat_bitsize, sqrt_lower, sqrt_upper
from escapetime.core.roots import (count_real_roots, isolate_complex_roots, isolate_real_intervals,
                                   isolate_real_roots, set_precision_cap)
from escapetime.errors import DivisionByZero, NotReal, ParseError

P = IntPolynomial
F = Fraction
SQRT2 = next(r for r in AlgebraicNumber.roots_of(P((-2, 0, 1))) if r.sign() > 0)
Z = AlgebraicNumber.gaussian(F(3, 5), F(4, 5))

small_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=5).filter(lambda c: c[-1] != 0)


# -- polynomials and rationals ---------------------------------------------

def test_poly_basics():
    p = P((-2, 0, 1))
    assert p.degree == 2 and p.height == 2 and p(3) == 7
    assert str(P((0, -1, 0, 1))).count("x") == 2
    assert P.from_json(p.to_json()) == p
    assert (p * p).degree == 4
    assert P((2, 4)).primitive_part() == P((1, 2))


def test_rational_io():
    assert parse_rational("-3/6") == F(-1, 2)
    assert fmt_rational(F(4, 2)) == "2" and fmt_rational(F(-1, 3)) == "-1/3"
    with pytest.raises(ParseError):
        parse_rational("x/2")
    # floor(log2 max(|c|,1)) + 1
    assert [bitsize(c) for c in (0, 1, 2, 3, 4, -255, 256)] == [1, 1, 2, 2, 3, 8, 9]
    assert rat_bitsize(F(3, 1024)) == 11


@given(st.fractions(min_value=0, max_value=1000))
def test_sqrt_bounds_bracket(q):
    lo, hi = sqrt_lower(q), sqrt_upper(q)
    assert lo * lo <= q <= hi * hi


# -- root isolation ---------------------------------------------------------

def test_isolate_real_examples():
    iv = isolate_real_roots(P((-2, 0, 1)))
    assert len(iv) == 2
    (a, b), (c, d) = [(r.re_lo, r.re_hi) for r in iv]
    assert -2 <= a and b <= -1 and 1 <= c and d <= 2
    assert isolate_real_roots(P((1, 0, 1))) == []
    three = isolate_real_roots(P((0, -1, 0, 1)))
    assert [(b.re_lo, b.re_hi) for b in three] == [(-1, -1), (0, 0), (1, 1)]


def test_isolate_complex_examples():
    boxes = isolate_complex_roots(P((5, -6, 5)))
    assert len(boxes) == 2
    assert any(b.re_lo <= F(3, 5) <= b.re_hi and b.im_lo <= F(4, 5) <= b.im_hi for b in boxes)
    assert any(b.im_lo <= F(-4, 5) <= b.im_hi for b in boxes)
    (one,) = isolate_complex_roots(P((-3, 1)))
    assert one.re_lo == one.re_hi == 3 and one.is_real()
    three = isolate_complex_roots(P((1, 0, 1)) * P((-2, 1)))
    assert len(three) == 3
    nonreal = [b for b in three if not b.is_real()]
    assert len(nonreal) == 2 and nonreal[0].conj() in nonreal


@settings(max_examples=40, deadline=None)
@given(small_polys)
def test_conjugate_pairing(coeffs):
    p = P(tuple(coeffs))
    if p.degree < 1:
        return
    boxes = isolate_complex_roots(p)
    for b in boxes:
        assert any(b.conj().intersects(o) for o in boxes)
    # the count matches sympy's independent root count for the squarefree part
    x = sympy.Symbol("x")
    sf = sympy.Poly(list(reversed(coeffs)), x).sqf_part()
    assert len(boxes) == sf.degree()


@settings(max_examples=40, deadline=None)
@given(small_polys)
def test_real_count_matches_sympy(coeffs):
    p = P(tuple(coeffs))
    if p.degree < 1:
        return
    x = sympy.Symbol("x")
    expected = len(sympy.Poly(list(reversed(coeffs)), x).real_roots(multiple=False))
    assert count_real_roots(p) == expected == len(isolate_real_intervals(p))


# -- algebraic numbers -------------------------------------------------------

def test_alg_op_examples():
    assert alg_op("mul", SQRT2, SQRT2) == AlgebraicNumber.from_rational(2)
    assert alg_op("modulus_sq", Z).as_fraction() == 1
    assert alg_op("add", SQRT2, -SQRT2).is_zero()
    assert alg_op("div", SQRT2, SQRT2).as_fraction() == 1
    assert alg_op("conj", Z) == Z.conj() != Z
    with pytest.raises(DivisionByZero):
        alg_op("div", SQRT2, AlgebraicNumber.from_rational(0))


def test_alg_sign_examples():
    assert alg_sign(alg_op("sub", SQRT2, AlgebraicNumber.from_rational(F(3, 2)))) == -1
    assert alg_sign(AlgebraicNumber.from_rational(0)) == 0
    assert alg_sign(alg_op("sub", alg_op("modulus_sq", Z), AlgebraicNumber.from_rational(1))) == 0
    with pytest.raises(NotReal):
        alg_sign(Z)


def test_min_poly_examples():
    assert min_poly(Z) == P((5, -6, 5))
    assert min_poly(AlgebraicNumber.from_rational(F(7, 3))) == P((-7, 3))
    assert min_poly(SQRT2) == P((-2, 0, 1))


def test_zero_decision_along_different_paths():
    # (sqrt2 * sqrt2) - 2 and sqrt2^4 - 4 are both zero; sqrt2^3 - 2 sqrt2 too
    two = AlgebraicNumber.from_rational(2)
    assert alg_op("sub", alg_op("mul", SQRT2, SQRT2), two).is_zero()
    assert (SQRT2 ** 4 - 4).is_zero()
    assert (SQRT2 ** 3 - 2 * SQRT2).is_zero()
    assert not (SQRT2 ** 3 - 3 * SQRT2).is_zero()
    cube = alg_op("mul", alg_op("mul", Z, Z), Z)
    assert cube == Z ** 3
    assert alg_op("modulus_sq", cube).as_fraction() == 1


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=9),
       st.fractions(min_value=-3, max_value=3, max_denominator=9))
def test_gaussian_arithmetic_agrees_with_rationals(a, b):
    # (a + b sqrt2)(a - b sqrt2) = a^2 - 2 b^2 exactly
    u = a + b * SQRT2
    v = a - b * SQRT2
    assert (u * v).as_fraction() == a * a - 2 * b * b
    assert (u + v).as_fraction() == 2 * a


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40))
def test_refinement_soundness(k):
    w = F(1, 1 << k)
    r = SQRT2.refine(w)
    assert r.box.width <= w
    assert r.box.re_lo ** 2 <= 2 <= r.box.re_hi ** 2
    finer = r.refine(w / 4)
    assert r.box.contains(finer.box)


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 200))
def test_arithmetic_enclosure_contains_operand_combination(prec):
    s = alg_op("add", SQRT2, Z)
    enc = s.enclosure(prec)
    comb = SQRT2.enclosure(prec) + Z.enclosure(prec)
    # true value sits in both, so they overlap
    assert enc.intersects_rect(comb.re.lower, comb.re.upper, comb.im.lower, comb.im.upper)


@settings(max_examples=30, deadline=None)
@given(small_polys)
def test_min_poly_divides_and_is_irreducible(coeffs):
    p = P(tuple(coeffs))
    if p.degree < 1:
        return
    x = sympy.Symbol("x")
    sp = sympy.Poly(list(reversed(coeffs)), x)
    for r in AlgebraicNumber.roots_of(p):
        m = min_poly(r)
        assert is_irreducible(m)
        mp = sympy.Poly(list(reversed(m.coeffs)), x)
        assert sp.rem(mp).is_zero


def test_factor_multiplicities():
    p = P((-1, 1)) ** 2 * P((1, 0, 1))
    got = {f: m for f, m in factor(p)}
    assert got == {P((-1, 1)): 2, P((1, 0, 1)): 1}


def test_json_round_trip():
    for a in (SQRT2, Z, AlgebraicNumber.from_rational(F(-7, 3))):
        assert AlgebraicNumber.from_json(a.to_json()) == a


def test_precision_cap_setter():
    old = set_precision_cap(1 << 10)
    try:
        assert _roots.PRECISION_CAP == 1 << 10
        with pytest.raises(ValueError):
            set_precision_cap(8)
    finally:
        set_precision_cap(old)
    assert _roots.PRECISION_CAP == old


def test_repeated_root_at_a_bisection_point():
    # x^2 (4 - 3x - 5x^2): the double root sits on the first midpoint
    p = P((0, 0, 4, -3, -5))
    assert count_real_roots(p) == 3
    assert (0, 0) in isolate_real_intervals(p)

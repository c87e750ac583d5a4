"""Bound formulas as exact magnitudes: values, printed shape, monotonicity, comparison."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from escapetime.bounds.constants import BoundConstants
from escapetime.bounds.formulas import (baker_lower, block_bound_exp, block_bound_poly, block_bound_shrink,
                                        block_crossing_budget, compact_escape_bound, lemma_a1_holds, mignotte_gap,
                                        nonrec_bound, quant_kronecker_bound, rec_bound, switching_budget,
                                        turan_params)
from escapetime.bounds.magnitude import Mag, ln, magnitude_cmp
from escapetime.dynamics.orbit import first_all_below
from escapetime.errors import GammaNotExpanding, GammaNotShrinking, ParseError
from escapetime.linalg.jordan import real_jordan

F = Fraction
C = Mag.const


def exact_value(m: Mag) -> Fraction:
    ex = m.exact()
    assert ex is not None and ex.is_rational
    return ex.coef


# -- fixed values --------------------------------------------------------------

def test_mignotte_small():
    m = mignotte_gap(1, 3)
    # 1 / (36864 sqrt 3)
    assert magnitude_cmp(m, C(1) / (C(36864) * C(3) ** C(F(1, 2)))) == 0
    lo, hi = m.decimal_enclosure(6)
    assert F(lo.replace("e-5", "")) >= F("1.5") and F(hi.replace("e-5", "")) <= F("1.6")


def test_mignotte_2_5_as_printed():
    # the listed example claims < 1e-20; the formula term for term gives about 2.546e-16
    m = mignotte_gap(2, 5)
    assert magnitude_cmp(m, 0) > 0
    assert magnitude_cmp(m, C(F(2546, 10 ** 19))) > 0
    assert magnitude_cmp(m, C(F(2547, 10 ** 19))) < 0


def test_baker_example():
    b = baker_lower(1, 2, [1], 2)
    assert magnitude_cmp(b, 0) > 0 and magnitude_cmp(b, 1) < 0


def test_turan_examples():
    assert turan_params(1, [F(1, 4)])["M"] == [6]
    assert turan_params(2, [F(1, 4), F(1, 4)])["M"] == [9, 9]
    assert exact_value(turan_params(1, [F(1, 4)])["T_of_delta"](F(1, 2))) == 8
    with pytest.raises(ValueError):
        turan_params(1, [F(1, 2)])


def test_quant_kronecker_examples():
    empty = quant_kronecker_bound(0, 1, [], 1, 1, F(1, 2))
    assert magnitude_cmp(empty, 1) > 0
    big = quant_kronecker_bound(1, 2, [2], 1, 1, F(1, 10))
    assert magnitude_cmp(big, 10 ** 6) > 0


def test_block_bound_examples():
    assert exact_value(block_bound_poly(2, 10, 1)) == 800
    assert exact_value(block_bound_poly(1, 7, F(1, 3))) == 21
    assert exact_value(block_bound_poly(3, 10, 1)) == 21_870_000
    assert exact_value(block_bound_exp(1, 4, 1, 2)) == 2
    assert exact_value(block_bound_exp(2, 4, 1, 2)) == 6
    shrink = block_bound_shrink(1, 2, F(1, 2), F(1, 2))
    assert magnitude_cmp(shrink, 11) < 0 and magnitude_cmp(shrink, 10) > 0
    with pytest.raises(GammaNotExpanding):
        block_bound_exp(1, 4, 1, F(1, 2))
    with pytest.raises(GammaNotShrinking):
        block_bound_shrink(1, 4, 1, 2)


def test_nonrec_and_compact_examples():
    assert exact_value(nonrec_bound(1, 1, 1, F(1, 2))) == 8
    assert exact_value(nonrec_bound(2, 2, 1, F(1, 2))) == 256
    assert exact_value(rec_bound(1, 1, 1)) == 2
    comp = compact_escape_bound(1, 1, 1)
    assert magnitude_cmp(comp, 8) > 0
    assert exact_value(comp) == 256
    bigger = compact_escape_bound(1, 1, 1, BoundConstants(ctau=2, nonrec_L=2))
    assert magnitude_cmp(bigger, comp) >= 0


def test_budgets():
    assert switching_budget(1) == 0 and switching_budget(2) == 4
    assert block_crossing_budget(3) == 6 and block_crossing_budget(1) == 0


def test_magnitude_cmp_examples():
    assert magnitude_cmp(C(2) ** C(100), C(10) ** C(30)) == 1
    assert magnitude_cmp(C(F(1, 2)) * C(40) ** C(2), 800) == 0
    assert magnitude_cmp(ln(2), 0) == 1
    assert magnitude_cmp(ln(4) / ln(2), 2) == 0


# -- printed shape ---------------------------------------------------------------

GOLDEN = {
    "mignotte(1,3)": (lambda: mignotte_gap(1, 3),
                      "(1/((3^(1/2))*(4^5)*(2^2)*(1^2)*(2^0)*(3^2)))"),
    "baker(1,2,[1],2)": (lambda: baker_lower(1, 2, [1], 2), "(1/(e^((32^6)*1*ln(2))))"),
    "poly(2,10,1)": (lambda: block_bound_poly(2, 10, 1), "((1/2)*(((4*10)/1)^2))"),
    "exp(2,4,1,2)": (lambda: block_bound_exp(2, 4, 1, 2), "((2*ln(((2*4)/1)))/ln(2))"),
    "shrink(1,2,1/2,1/2)": (lambda: block_bound_shrink(1, 2, F(1, 2), F(1, 2)),
                            "(((4/ln((1/(1/2))))*ln(max((2/ln((1/(1/2)))), 1))) + "
                            "((2*ln(((1*2)/(1/2))))/ln((1/(1/2)))))"),
    "nonrec(1,1,1,1/2)": (lambda: nonrec_bound(1, 1, 1, F(1, 2)), "((2^2)*(2^(1^1)))"),
    "rec(1,1,1)": (lambda: rec_bound(1, 1, 1), "(2^(1^1))"),
    "compact(1,1,1)": (lambda: compact_escape_bound(1, 1, 1),
                       "((2^3)*max((2^(1^2)), (((1/(1/(2^(1^2))))^4)*(2^(1^2)))))"),
    "kronecker(1,2,[2],1,1,1/10)": (
        lambda: quant_kronecker_bound(1, 2, [2], 1, 1, F(1, 10)),
        "((8*pi*1*((((2*pi)*1)/(1/10))^1)*((2*(((2*pi)*1)/(1/10))*ceil(((((4*pi)*1)/(1/10))*"
        "ln(max(((((4*pi)*1)*1)/(1/10)), e)))))^((64^8)*2))) + 1)"),
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_formula_shape(name):
    build, text = GOLDEN[name]
    m = build()
    assert str(m) == text
    assert Mag.from_json(m.to_json()).same_tree(m)


# -- monotonicity ----------------------------------------------------------------

pos = st.fractions(min_value=F(1, 8), max_value=8, max_denominator=16)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), pos, pos, st.sampled_from([F(1, 4), F(1, 2), F(1)]))
def test_poly_bound_monotone(k, c1, c2, eps):
    lo, hi = sorted((c1, c2))
    assert magnitude_cmp(block_bound_poly(k, lo, eps), block_bound_poly(k, hi, eps)) <= 0
    assert magnitude_cmp(block_bound_poly(k, hi, 2 * eps), block_bound_poly(k, hi, eps)) <= 0
    assert magnitude_cmp(block_bound_poly(k, 4, eps), block_bound_poly(k + 1, 4, eps)) <= 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.fractions(min_value=F(11, 10), max_value=3, max_denominator=10),
       st.fractions(min_value=F(11, 10), max_value=3, max_denominator=10))
def test_exp_bound_decreasing_in_gamma(k, g1, g2):
    lo, hi = sorted((g1, g2))
    C0 = 4
    assert magnitude_cmp(block_bound_exp(k, C0, 1, hi), block_bound_exp(k, C0, 1, lo)) <= 0
    assert magnitude_cmp(block_bound_exp(k, C0, 1, lo), block_bound_exp(k, 2 * C0, 1, lo)) <= 0
    assert magnitude_cmp(block_bound_exp(k, C0, 1, lo), block_bound_exp(k, C0, F(1, 2), lo)) <= 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=10),
       st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=10))
def test_shrink_bound_increasing_in_gamma(k, g1, g2):
    lo, hi = sorted((g1, g2))
    assert magnitude_cmp(block_bound_shrink(k, 4, 1, lo), block_bound_shrink(k, 4, 1, hi)) <= 0
    assert magnitude_cmp(block_bound_shrink(k, 4, 1, lo), block_bound_shrink(k, 8, 1, lo)) <= 0


def test_mignotte_strictly_decreasing():
    for d in range(1, 5):
        for H in range(1, 8):
            here = mignotte_gap(d, H)
            assert magnitude_cmp(mignotte_gap(d, H + 1), here) < 0
            assert magnitude_cmp(mignotte_gap(d + 1, H), here) < 0


# -- comparison soundness -----------------------------------------------------------

def _random_mag(rng, depth=0):
    if depth > 2 or rng.random() < 0.3:
        return C(F(rng.randint(1, 50), rng.randint(1, 9)))
    op = rng.choice(["add", "mul", "div", "ln", "pow", "max"])
    a, b = _random_mag(rng, depth + 1), _random_mag(rng, depth + 1)
    if op == "ln":
        return ln(a + C(1))
    if op == "pow":
        return a ** C(F(rng.randint(1, 5), rng.randint(1, 3)))
    if op == "max":
        return Mag("max", (a, b))
    return Mag(op, (a, b))


def test_cmp_agrees_with_fourfold_precision():
    rng = random.Random(11)
    for _ in range(200):
        a, b = _random_mag(rng), _random_mag(rng)
        c = magnitude_cmp(a, b)
        if c == 0:
            continue
        (alo, ahi), (blo, bhi) = a.bounds(256), b.bounds(256)
        if c < 0:
            assert alo <= bhi
        else:
            assert ahi >= blo
        # and the higher precision enclosures never contradict the ordering
        assert not (c < 0 and alo > bhi) and not (c > 0 and ahi < blo)


def test_decimal_enclosure_brackets_value():
    m = C(2) ** C(F(1, 2))
    lo, hi = m.decimal_enclosure(12)
    assert F(lo) ** 2 < 2 < F(hi) ** 2
    assert C(999).decimal_enclosure(2) == ("9.9e2", "1.0e3")


# -- the helper lemma's domain ---------------------------------------------------------

def test_shrink_bound_fails_outside_helper_domain():
    # gamma = 1/9, k = 1 gives a = 1/ln 9 < 1, where the helper lemma does not apply
    gamma, eps, C0 = F(1, 9), F(1), F(2)
    bound = block_bound_shrink(1, C0, eps, gamma)
    form = real_jordan([[gamma]])
    measured = first_all_below(form, [F(3, 2)], eps, 100)
    assert measured == 1
    assert magnitude_cmp(bound, measured) < 0
    # the helper inequality t >= a ln t + b, decided exactly
    assert lemma_a1_holds(1, 0, 1) and lemma_a1_holds(2, 0, 2) and not lemma_a1_holds(3, 0, 3)


# -- constants ---------------------------------------------------------------------------

def test_constants_json(tmp_path):
    c = BoundConstants(ctau=2)
    assert BoundConstants.from_json(c.to_json()) == c
    with pytest.raises(ParseError):
        BoundConstants.from_json({"ctau": 0})
    with pytest.raises(ParseError):
        BoundConstants.from_json({"nope": 1})
    p = tmp_path / "c.json"
    p.write_text('{"nonrec_L": 3}')
    assert BoundConstants.load(p).nonrec_L == 3
    p.write_text("{")
    with pytest.raises(ParseError):
        BoundConstants.load(p)

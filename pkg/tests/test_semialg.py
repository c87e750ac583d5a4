"""Sets, membership, normalisation, the Jordan-coordinates transform and the oracles."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from escapetime.errors import EmpiricalTimeout, ParseError, Undecided
from escapetime.linalg.matrix import rotation
from escapetime.semialg.families import (additive_start, gen_additive_instance, gen_rotation_instance,
                                         rotation_start, unit_ball, unit_circle)
from escapetime.semialg.formula import (And, Atom, EscapeInstance, Not, Or, SemialgebraicSet, atoms, member,
                                        normalize)
from escapetime.semialg.multipoly import MultiPoly
from escapetime.semialg.oracles import min_oracle, radius_oracle, radius_search
from escapetime.semialg.transform import membership_equivalence, transform_full, transform_instance

F = Fraction
X = MultiPoly.var(1, 0)
rats = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def disk():
    return unit_ball(2)


def test_member_examples():
    assert member(disk(), [F(1, 2), F(1, 2)])
    assert member(unit_circle(), [F(3, 5), F(4, 5)])
    assert not member(unit_circle(), [F(1, 2), F(1, 2)])


def test_normalize_examples():
    assert normalize(Atom(X - 2, "ge")) == Atom(2 - X, "le")
    assert normalize(Atom(X, "ne")) == Not(Atom(X, "eq"))
    assert normalize(Atom(X, "gt")) == Not(Atom(X, "le"))
    assert all(a.rel in ("le", "eq") for a in atoms(normalize(Or((Atom(X, "lt"), Atom(X, "ge"))))))


def _raw_formula(draw_rels):
    x, y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    polys = [x * x + y * y - 1, x - y, x * y * 2 - 1, x * 3 + y]
    return And(tuple(Atom(p, r) for p, r in zip(polys, draw_rels)))


def _direct(node, pt):
    """Independent membership: integer sign of every atom, raw relations read directly."""
    if isinstance(node, Atom):
        s = node.poly.eval_scaled_int(pt)
        s = (s > 0) - (s < 0)
        return {"le": s <= 0, "eq": s == 0, "lt": s < 0, "gt": s > 0, "ge": s >= 0, "ne": s != 0}[node.rel]
    if isinstance(node, Not):
        return not _direct(node.arg, pt)
    vals = [_direct(a, pt) for a in node.args]
    return all(vals) if isinstance(node, And) else any(vals)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(["le", "eq", "lt", "gt", "ge", "ne"]), min_size=4, max_size=4), rats, rats)
def test_normalize_preserves_semantics_and_member_is_exact(rels, a, b):
    raw = _raw_formula(rels)
    K = SemialgebraicSet(2, raw)
    assert member(K, [a, b]) == _direct(raw, [a, b]) == _direct(K.formula, [a, b])


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-20, 20), max_size=6), rats, rats)
def test_eval_scaled_int_has_the_sign_of_the_value(terms, a, b):
    p = MultiPoly(2, terms)
    v, s = p([a, b]), p.eval_scaled_int([a, b])
    assert (v > 0) - (v < 0) == (s > 0) - (s < 0)


def test_complexity_and_json():
    inst = gen_additive_instance(3, 2, 1)
    assert inst.set.complexity() == (4, 2, 2)
    back = EscapeInstance.from_json(inst.to_json())
    assert back.matrix == inst.matrix and back.set.to_json() == inst.set.to_json()
    with pytest.raises(ParseError):
        EscapeInstance.from_json({"matrix": {"n": 1, "rows": [["1"]]}})


def test_rotation_generator():
    inst = gen_rotation_instance(1, 2, 1)
    assert inst.set.nvars == 3
    assert member(inst.set, rotation_start(1, 2, 1))
    assert rotation_start(1, 2, 1)[2] == F(1, 2)
    # the hole atom excludes (1, 0)
    assert not member(inst.set, [F(1), F(0), F(1, 2)])
    two = gen_rotation_instance(2, 2, 1)
    assert two.set.nvars == 4 and rotation_start(2, 2, 1)[3] == F(1, 4)
    assert member(two.set, rotation_start(2, 2, 1))


def test_additive_generator_examples():
    K = gen_additive_instance(3, 2, 1).set
    assert additive_start(3, 2, 1) == [2, 4, 0, 1]
    for k in range(17):
        assert member(K, [F(2), F(4), F(k), F(1)])
    assert not member(K, [F(2), F(4), F(17), F(1)])
    K2 = gen_additive_instance(2, 1, 1).set
    assert member(K2, [F(2), F(2), F(1)]) and not member(K2, [F(2), F(3), F(1)])


def test_transform_examples():
    x = MultiPoly.var(1, 0)
    K = SemialgebraicSet(1, Atom(x * x - 4, "le"))
    form, K2, rep = transform_instance([[F(2)]], K)
    assert rep.ok and rep.delta == 1 and rep.d == 2
    assert all(a.degree <= 2 for a in rep.atoms)
    tr = transform_full(rotation(F(3, 5), F(4, 5)), unit_circle())
    assert tr.report.ok
    assert all(a.degree <= 2 for a in tr.report.atoms)
    assert all(l == r for _, l, r in membership_equivalence(rotation(F(3, 5), F(4, 5)), unit_circle(), tr, [1, 0], 20))


def test_identity_transform_keeps_atoms():
    K = disk()
    tr = transform_full([[F(1), F(0)], [F(0), F(1)]], K)
    assert [[x.as_fraction() for x in r] for r in tr.form.Q] == [[1, 0], [0, 1]]
    body = tr.set.formula.args[-1]
    # the pinned constants are extra variables that the substituted atoms do not use
    extra = tr.set.nvars - 2
    moved = {tuple((c, tuple(e[:2])) for c, e in a.poly.to_json()) for a in atoms(body)}
    assert all(all(x == 0 for x in e[2:]) for a in atoms(body) for _, e in a.poly.to_json())
    assert moved == {tuple((c, tuple(e)) for c, e in a.poly.to_json()) for a in atoms(K.formula)}
    assert extra == len(tr.gammas)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4), rats, rats)
def test_transform_membership_equivalence(entries, a, b):
    A = [[F(entries[0]), F(entries[1])], [F(entries[2]), F(entries[3])]]
    tr = transform_full(A, disk())
    assert tr.report.ok
    assert all(l == r for _, l, r in membership_equivalence(A, disk(), tr, [a, b], 6))


def test_radius_oracle_examples():
    C = radius_oracle(disk()).exact().coef
    assert 1 <= C <= 1 + F(1, 1 << 10)
    # slack compounds along the x2 = x1^2 chain, so the default 2^-12 tolerance is needed here
    got = radius_search(gen_additive_instance(3, 2, 1).set).C
    assert 277 <= got * got and got <= F(277) ** F(1, 2) + F(1, 64)
    para = radius_oracle(disk(), mode="parametric", c=1, params=(2, 2, 1))
    assert para.exact().coef == 256
    with pytest.raises(EmpiricalTimeout):
        radius_search(disk(), budget=3)


def test_radius_soundness_by_sampling():
    K = SemialgebraicSet(2, And((Atom(MultiPoly.var(2, 0, 2) + MultiPoly.var(2, 1, 4) * 3 - 5, "le"),)))
    cert = radius_search(K)
    rng = random.Random(7)
    for p in cert.sample(rng, 400):
        if member(K, p):
            assert sum(v * v for v in p) <= cert.C_squared
    # points drawn with no knowledge of the boxes
    for _ in range(2000):
        p = [F(rng.randint(-3000, 3000), 1000) for _ in range(2)]
        if member(K, p):
            assert sum(v * v for v in p) <= cert.C_squared


def test_min_oracle_examples():
    x, y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    low = min_oracle(unit_circle(), (x - 2) ** 2 + y * y).lower
    assert 1 - F(1, 64) <= low <= 1
    line = SemialgebraicSet(1, Atom(X - 3, "eq"))
    assert 3 - F(1, 1024) <= min_oracle(line, X).lower <= 3
    m = min_oracle(disk(), x * x + y * y).lower
    assert -F(1, 1024) <= m <= 0
    empty = SemialgebraicSet(1, And((Atom(X - 1, "eq"), Atom(X - 2, "eq"))))
    with pytest.raises(Undecided):
        min_oracle(empty, X)

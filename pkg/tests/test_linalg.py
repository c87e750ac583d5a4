"""Characteristic polynomials, Jordan structure and the real Jordan form certificate."""
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from escapetime.core.algebraic import AlgebraicNumber
from escapetime.core.factor import factor
from escapetime.core.linear import mat_mul
from escapetime.core.poly import IntPolynomial
from escapetime.errors import ParseError
from escapetime.linalg.algexpr import AlgExpr, matrix_is_zero
from escapetime.linalg.jordan import jordan_structure, real_jordan, rec_split, verify_certificate
from escapetime.linalg.matrix import char_poly, matrix_from_json, matrix_to_json, rotation

F = Fraction
P = IntPolynomial
SHEAR = [[F(1), F(1)], [F(0), F(1)]]
SWAP2 = [[F(0), F(2)], [F(1), F(0)]]
ROT = rotation(F(3, 5), F(4, 5))


def _diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[F(0)] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[k + i][k + j] = F(x)
        k += len(b)
    return out


def _conjugate(J, U):
    """U J U^-1 for a unimodular integer U, so the structure of J is known."""
    Ui = [[F(x) for x in r] for r in sympy.Matrix(U).inv().tolist()]
    return mat_mul(mat_mul([[F(x) for x in r] for r in U], J), Ui)


def _sympy_sizes(A):
    _, Jm = sympy.Matrix(A).jordan_form()
    n = Jm.rows
    sizes, run = [], 1
    for i in range(n - 1):
        if Jm[i, i + 1] == 1:
            run += 1
        else:
            sizes.append(run)
            run = 1
    sizes.append(run)
    return sorted(sizes)


def test_char_poly_examples():
    p, c = char_poly(ROT)
    assert p == P((5, -6, 5)) and c == F(1, 5)  # x^2 - 6/5 x + 1
    assert char_poly(SHEAR)[0] == P((1, -2, 1))
    assert char_poly([[F(2)]])[0] == P((-2, 1))


def test_char_poly_matches_sympy():
    x = sympy.Symbol("x")
    for A in (ROT, SHEAR, SWAP2, [[F(1, 2), F(3)], [F(-2, 7), F(5, 3)]]):
        p, c = char_poly(A)
        mine = sympy.Poly(list(reversed(p.coeffs)), x).monic()
        assert mine == sympy.Matrix(A).charpoly(x)


def test_jordan_structure_examples():
    ((lam, sizes),) = jordan_structure(SHEAR)
    assert lam == AlgebraicNumber.from_rational(1) and sizes == [2]
    got = jordan_structure(SWAP2)
    assert sorted(float(l.approx().real) for l, _ in got) == pytest.approx([-2 ** 0.5, 2 ** 0.5])
    assert all(s == [1] for _, s in got)
    eig = [l for l, _ in jordan_structure(ROT)]
    assert AlgebraicNumber.gaussian(F(3, 5), F(4, 5)) in eig


@pytest.mark.parametrize("J", [
    _diag([[2, 1, 0], [0, 2, 1], [0, 0, 2]], [[2]]),
    _diag([[1, 1], [0, 1]], [[1, 1], [0, 1]]),
    _diag([[0, -1], [1, 0]], [[3]], [[3]]),
    _diag([[-1, 1], [0, -1]], [[F(1, 2)]], [[5]]),
])
def test_structure_against_sympy(J):
    U = [[1, 2, 0, 1], [0, 1, 1, 0], [0, 0, 1, 3], [0, 0, 0, 1]]
    A = _conjugate(J, U)
    mine = sorted(s for lam, sizes in jordan_structure(A) for s in sizes)
    assert mine == _sympy_sizes(A)
    form = real_jordan(A)
    assert form.certificate == "ok"


def _block_count_from_nullities(A, lam: int, n: int):
    """Sizes recovered from dim ker (A - lam)^k by sympy's own elimination."""
    M = sympy.Matrix(A) - lam * sympy.eye(n)
    nul = [0] + [n - (M ** k).rank() for k in range(1, n + 1)]
    ge = [nul[k] - nul[k - 1] for k in range(1, n + 1)]  # blocks of size >= k
    return sorted(k for k in range(1, n + 1) for _ in range(ge[k - 1] - (ge[k] if k < n else 0)))


def test_structure_cross_check_by_nullities():
    A = _conjugate(_diag([[2, 1, 0], [0, 2, 1], [0, 0, 2]], [[2]]), [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    (lam, sizes), = jordan_structure(A)
    assert sorted(sizes) == _block_count_from_nullities(A, 2, 4) == [1, 3]


def test_real_jordan_examples():
    f = real_jordan([[F(0), F(-1)], [F(1), F(0)]])
    assert [b.kind for b in f.blocks] == ["complexPair"]
    assert f.is_rational()
    assert [[x.as_fraction() for x in r] for r in f.J] == [[0, -1], [1, 0]]
    s = real_jordan(SHEAR)
    assert [[x.as_fraction() for x in r] for r in s.J] == [[1, 1], [0, 1]]
    w = real_jordan(SWAP2)
    assert [b.size for b in w.blocks] == [1, 1]
    d = [w.J[0][0], w.J[1][1]]
    assert sorted(x.sign() for x in d) == [-1, 1]
    assert (d[0] * d[0]).equals(AlgExpr.const(2))


def _check_certificate(form):
    A = [[AlgExpr.const(x) for x in r] for r in form.A]
    n = form.n
    mm = lambda X, Y: [[sum((X[i][k] * Y[k][j] for k in range(n)), AlgExpr.const(0)) for j in range(n)] for i in range(n)]
    lhs, rhs = mm(A, form.Q), mm(form.Q, form.J)
    assert matrix_is_zero([[a - b for a, b in zip(r, s)] for r, s in zip(lhs, rhs)])
    I = mm(form.Q, form.Qinv)
    assert matrix_is_zero([[I[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)])


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_certificate_on_random_3x3(entries):
    A = [[F(x) for x in entries[3 * i:3 * i + 3]] for i in range(3)]
    form = real_jordan(A)
    _check_certificate(form)
    verify_certificate(form)
    # conjugate merging: 2 * (pairs) + real rows = n
    rows = sum(b.dim for b in form.blocks)
    assert rows == 3
    # char_poly(J) = char_poly(A): block multiplicities match the factorisation
    per_factor = Counter()
    for b in form.blocks:
        per_factor[b.eigenvalue.minpoly] += b.size
    p, _ = char_poly(A)
    expected = {f: m for f, m in factor(p)}
    for f, m in expected.items():
        seen = per_factor[f]
        # real roots of f appear once each; complex pairs once per pair
        n_real = sum(1 for r in AlgebraicNumber.roots_of(f) if r.is_real())
        n_pairs = (f.degree - n_real) // 2
        assert seen == m * (n_real + n_pairs)


def test_rec_split_examples():
    form = real_jordan(_diag(ROT, [[2]]))
    (pair,) = [b for b in form.blocks if b.kind == "complexPair"]
    (real,) = [b for b in form.blocks if b.kind == "real"]
    # block order in J-coordinates is by factor, so compare against the blocks' own slots
    assert tuple(rec_split(form)) == (tuple(pair.coords), tuple(real.coords))
    # modulus-one defective block: the eigenvector slot is recurrent, the rest is not
    assert tuple(rec_split(real_jordan(SHEAR))) == ((0,), (1,))
    assert tuple(rec_split(real_jordan([[F(1, 2)]]))) == ((), (0,))


def test_modulus_classification_is_exact():
    form = real_jordan(_diag(ROT, [[F(-1)]], [[F(2)]]))
    split = rec_split(form)
    assert set(split.rec) | set(split.nonrec) == set(range(4))
    assert not set(split.rec) & set(split.nonrec)
    assert len(split.rec) == 3


def test_matrix_json():
    A = [[F(1, 2), F(-3)], [F(0), F(7, 9)]]
    assert matrix_from_json(matrix_to_json(A)) == A
    with pytest.raises(ParseError):
        matrix_from_json({"n": 2, "rows": [["1"]]})


def test_form_json_has_symbols():
    out = real_jordan(SWAP2).to_json()
    assert out["certificate"] == "ok" and out["symbols"]

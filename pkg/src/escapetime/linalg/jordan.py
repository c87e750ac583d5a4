"""Exact real Jordan normal form with a checked change of basis.

For each irreducible factor f of the characteristic polynomial the Jordan
chains are computed once over the number field Q[y]/(f) and then specialised
to every root of f.  Complex pairs use Re/Im columns, so A Q = Q J with J
real; both A Q = Q J and Q Qinv = I are verified exactly before returning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core.algebraic import AlgebraicNumber
from ..core.factor import factor
from ..core.linear import identity, mat_mul, rank_and_nullspace
from ..core.poly import IntPolynomial
from ..core.rational import fmt_rational
from ..core.roots import _canonical_roots
from ..errors import CertificateFailure
from .algexpr import AlgExpr, Sym, imag_unit
from .matrix import as_matrix, char_poly
from .numfield import NumberField, NFElem


@dataclass(frozen=True)
class JordanBlock:
    eigenvalue: AlgebraicNumber  # the Im > 0 member for complex pairs
    size: int
    kind: str  # "real" or "complexPair"
    start: int

    @property
    def dim(self) -> int:
        return self.size if self.kind == "real" else 2 * self.size

    @property
    def coords(self) -> range:
        return range(self.start, self.start + self.dim)

    def components(self) -> list[tuple[int, ...]]:
        """Coordinate groups measured together by the Jordan norm."""
        if self.kind == "real":
            return [(i,) for i in self.coords]
        return [(self.start + 2 * j, self.start + 2 * j + 1) for j in range(self.size)]

    def to_json(self) -> dict:
        return {"kind": self.kind, "size": self.size, "start": self.start, "eigenvalue": self.eigenvalue.to_json()}


@dataclass
class RealJordanForm:
    A: list
    blocks: list[JordanBlock]
    J: list[list[AlgExpr]]
    Q: list[list[AlgExpr]]
    Qinv: list[list[AlgExpr]]
    certificate: str = "unchecked"
    structure: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.A)

    def is_rational(self) -> bool:
        return all(x.is_rational() for M in (self.J, self.Q, self.Qinv) for r in M for x in r)

    def to_json(self) -> dict:
        syms: dict = {}

        def enc(x: AlgExpr):
            if x.is_rational():
                return fmt_rational(x.as_fraction())
            terms = []
            for m, c in sorted(x.terms.items()):
                mono = []
                for k, e in m:
                    if k not in syms:
                        syms[k] = len(syms)
                    mono.append([syms[k], e])
                terms.append([fmt_rational(c), mono])
            return {"expr": terms}

        out = {
            "n": self.n,
            "certificate": self.certificate,
            "blocks": [b.to_json() for b in self.blocks],
            "J": [[enc(x) for x in r] for r in self.J],
            "Q": [[enc(x) for x in r] for r in self.Q],
            "Qinv": [[enc(x) for x in r] for r in self.Qinv],
        }
        from .algexpr import _SYMS

        out["symbols"] = [_SYMS[k].alg.to_json() for k, _ in sorted(syms.items(), key=lambda kv: kv[1])]
        return out


# ---------------------------------------------------------------------------
# helpers over a number field


def _matmul_K(X, Y):
    n, m, k = len(X), len(Y), len(Y[0])
    return [[_dot([X[i][t] for t in range(m)], [Y[t][j] for t in range(m)]) for j in range(k)] for i in range(n)]


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        if x.is_zero() or y.is_zero():
            continue
        acc = x * y if acc is None else acc + x * y
    return acc if acc is not None else (a[0] * 0 if a else 0)


def _nullspace_K(M, K: NumberField) -> list[list[NFElem]]:
    _, basis = rank_and_nullspace(M, zero_test=lambda x: (x == 0) if not isinstance(x, NFElem) else x.is_zero())
    return [[x if isinstance(x, NFElem) else K.const(x) for x in v] for v in basis]


def _rank_K(vectors) -> int:
    if not vectors:
        return 0
    r, _ = rank_and_nullspace(vectors, zero_test=lambda x: x.is_zero() if isinstance(x, NFElem) else x == 0)
    return r


def _inverse_K(M, K: NumberField):
    n = len(M)
    aug = [list(M[i]) + [K.one() if i == j else K.zero() for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if not aug[r][c].is_zero())
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and not aug[r][c].is_zero():
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _apply_K(B, v):
    return [_dot(row, v) for row in B]


@dataclass
class _FactorData:
    f: IntPolynomial
    mult: int
    K: NumberField
    sizes: list[int]  # block sizes, descending
    chains: list[list[list[NFElem]]]  # per chain: vectors, eigenvector first
    left: list[list[NFElem]]  # rows dual to the chain vectors (chain order)
    nullities: list[int]


def _factor_chains(A, f: IntPolynomial, mult: int) -> _FactorData:
    n = len(A)
    K = NumberField(f)
    y = K.gen()
    B = [[K.const(A[i][j]) - (y if i == j else 0) for j in range(n)] for i in range(n)]
    powers = [B]
    nulls = [_nullspace_K(B, K)]
    while len(nulls[-1]) < mult:
        powers.append(_matmul_K(powers[-1], B))
        nulls.append(_nullspace_K(powers[-1], K))
        if len(powers) > n:
            raise CertificateFailure("generalized eigenspace did not stabilise")
    kmax = len(powers)
    if len(nulls[-1]) != mult:
        raise CertificateFailure("generalized eigenspace dimension disagrees with multiplicity")
    tops: list[tuple[list, int]] = []
    for k in range(kmax, 0, -1):
        base = list(nulls[k - 2]) if k >= 2 else []
        for u, lvl in tops:
            v = u
            for _ in range(lvl - k):
                v = _apply_K(B, v)
            base.append(v)
        r0 = _rank_K(base)
        for cand in nulls[k - 1]:
            if _rank_K(base + [cand]) > r0:
                base.append(cand)
                r0 += 1
                tops.append((cand, k))
    chains = []
    for u, lvl in sorted(tops, key=lambda t: -t[1]):
        vecs = [u]
        for _ in range(lvl - 1):
            vecs.append(_apply_K(B, vecs[-1]))
        chains.append(list(reversed(vecs)))
    sizes = [len(c) for c in chains]
    if sum(sizes) != mult:
        raise CertificateFailure("Jordan chains do not span the generalized eigenspace")
    V = [v for c in chains for v in c]  # columns
    Pt = [[powers[-1][j][i] for j in range(n)] for i in range(n)]
    U = _nullspace_K(Pt, K)  # rows u with u P = 0
    M = [[_dot(u, v) for v in V] for u in U]
    W = mat = _matmul_K(_inverse_K(M, K), U)
    del mat
    return _FactorData(f, mult, K, sizes, chains, W, [len(x) for x in nulls])


def _rational_nullities(A, f: IntPolynomial, kmax: int) -> list[int]:
    """dim ker f(A)^k over Q, for k = 1..kmax (independent cross-check)."""
    n = len(A)
    fA = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(f.coeffs):
        fA = mat_mul(fA, A)
        for i in range(n):
            fA[i][i] += c
    out = []
    P = identity(n)
    for _ in range(kmax):
        P = mat_mul(P, fA)
        r, _ = rank_and_nullspace(P)
        out.append(n - r)
    return out


def _check_structure(A, data: _FactorData) -> None:
    D = data.f.degree
    kmax = max(data.sizes)
    got = _rational_nullities(A, data.f, kmax)
    want = [D * sum(min(s, k) for s in data.sizes) for k in range(1, kmax + 1)]
    if got != want:
        raise CertificateFailure(f"block sizes {data.sizes} disagree with rational nullities {got}")


def _all_factor_data(A) -> list[_FactorData]:
    cp, _ = char_poly(A)
    out = []
    for f, mult in factor(cp):
        data = _factor_chains(A, f, mult)
        _check_structure(A, data)
        out.append(data)
    return out


def jordan_structure(A) -> list[tuple[AlgebraicNumber, list[int]]]:
    """Each eigenvalue with its Jordan block sizes (descending)."""
    A = as_matrix(A)
    out = []
    for data in _all_factor_data(A):
        for i in range(len(_canonical_roots(data.f.coeffs))):
            out.append((AlgebraicNumber._from_index(data.f, i), list(data.sizes)))
    return out


def real_jordan(A, verify: bool = True) -> RealJordanForm:
    A = as_matrix(A)
    n = len(A)
    cols: list[list[AlgExpr]] = []
    rows: list[list[AlgExpr]] = []
    blocks: list[JordanBlock] = []
    diag_entries: list = []  # (start, kind, size, a, b)
    structure = []
    I = None
    for data in _all_factor_data(A):
        f = data.f
        roots = _canonical_roots(f.coeffs)
        for idx, box in enumerate(roots):
            alg = AlgebraicNumber._from_index(f, idx)
            structure.append((alg, list(data.sizes)))
            if box.is_real():
                s = Sym.of(alg)
                lam = AlgExpr.from_poly_at(data.K.gen().c, s)
                for chain, wrows in _split_rows(data):
                    start = len(cols)
                    for v in chain:
                        cols.append([AlgExpr.from_poly_at(x.c, s) for x in v])
                    for w in wrows:
                        rows.append([AlgExpr.from_poly_at(x.c, s) for x in w])
                    blocks.append(JordanBlock(alg, len(chain), "real", start))
                    diag_entries.append((start, "real", len(chain), lam, None))
            elif box.im_lo > 0:
                if I is None:
                    I = AlgExpr.sym(imag_unit())
                s = Sym.of(alg)
                sc = s.conj()
                lam = AlgExpr.from_poly_at(data.K.gen().c, s)
                lamc = AlgExpr.from_poly_at(data.K.gen().c, sc)
                a = (lam + lamc) * Fraction(1, 2)
                b = -(I * (lam - lamc)) * Fraction(1, 2)
                half_i = I * Fraction(1, 2)
                for chain, wrows in _split_rows(data):
                    start = len(cols)
                    for v in chain:
                        vl = [AlgExpr.from_poly_at(x.c, s) for x in v]
                        vc = [AlgExpr.from_poly_at(x.c, sc) for x in v]
                        cols.append([(p + q) * Fraction(1, 2) for p, q in zip(vl, vc)])
                        cols.append([half_i * (p - q) for p, q in zip(vl, vc)])
                    for w in wrows:
                        wl = [AlgExpr.from_poly_at(x.c, s) for x in w]
                        wc = [AlgExpr.from_poly_at(x.c, sc) for x in w]
                        rows.append([p + q for p, q in zip(wl, wc)])
                        rows.append([-(I * (p - q)) for p, q in zip(wl, wc)])
                    blocks.append(JordanBlock(alg, len(chain), "complexPair", start))
                    diag_entries.append((start, "complexPair", len(chain), a, b))
    if len(cols) != n:
        raise CertificateFailure("basis size mismatch")
    Q = [[cols[j][i] for j in range(n)] for i in range(n)]
    Qinv = rows
    zero, one = AlgExpr.const(0), AlgExpr.const(1)
    J = [[zero for _ in range(n)] for _ in range(n)]
    for start, kind, size, a, b in diag_entries:
        if kind == "real":
            for j in range(size):
                J[start + j][start + j] = a
                if j:
                    J[start + j - 1][start + j] = one
        else:
            for j in range(size):
                p = start + 2 * j
                J[p][p] = a
                J[p + 1][p + 1] = a
                J[p][p + 1] = -b
                J[p + 1][p] = b
                if j:
                    J[p - 2][p] = one
                    J[p - 1][p + 1] = one
    J, Q, Qinv = (_simplify_matrix(M) for M in (J, Q, Qinv))
    form = RealJordanForm(A, blocks, J, Q, Qinv, "unchecked", structure)
    if verify:
        verify_certificate(form)
    return form


def _split_rows(data: _FactorData):
    """Pair each chain with its dual rows."""
    k = 0
    for chain in data.chains:
        yield chain, data.left[k : k + len(chain)]
        k += len(chain)


def verify_certificate(form: RealJordanForm) -> None:
    """Exact check of A Q = Q J and Q Qinv = I; raises CertificateFailure."""
    A, Q, J, Qi = form.A, form.Q, form.J, form.Qinv
    n = len(A)
    for i in range(n):
        for j in range(n):
            lhs = AlgExpr.const(0)
            for k in range(n):
                if A[i][k]:
                    lhs = lhs + Q[k][j] * A[i][k]
            rhs = AlgExpr.const(0)
            for k in range(n):
                if not J[k][j].is_structurally_zero():
                    rhs = rhs + Q[i][k] * J[k][j]
            if not (lhs - rhs).is_zero():
                form.certificate = "failed"
                raise CertificateFailure(f"A Q != Q J at ({i}, {j})")
    for i in range(n):
        for j in range(n):
            acc = AlgExpr.const(-1 if i == j else 0)
            for k in range(n):
                acc = acc + Q[i][k] * Qi[k][j]
            if not acc.is_zero():
                form.certificate = "failed"
                raise CertificateFailure(f"Q Qinv != I at ({i}, {j})")
    form.certificate = "ok"


def _simplify_entry(x: AlgExpr) -> AlgExpr:
    """Replace an expression by a rational constant when it provably is one."""
    if x.is_rational():
        return x
    z = x.approx()
    if abs(z.imag) > 1e-9:
        return x
    guess = Fraction(z.real).limit_denominator(1 << 20)
    if x.equals(guess):
        return AlgExpr.const(guess)
    return x


def _simplify_matrix(M):
    return [[_simplify_entry(x) for x in row] for row in M]


@dataclass(frozen=True)
class SpaceSplit:
    """Index sets, in J-coordinates, of the recurrent part and the rest."""
    rec: tuple
    nonrec: tuple

    def __iter__(self):
        return iter((self.rec, self.nonrec))

    def to_json(self) -> dict:
        return {"rec": list(self.rec), "nonrec": list(self.nonrec)}


def rec_split(form: RealJordanForm) -> SpaceSplit:
    """Coordinates of the recurrent subspace (first slot of each modulus-one block) and the rest."""
    rec, nonrec = [], []
    for b in form.blocks:
        head = 1 if b.kind == "real" else 2
        if is_modulus_one(b.eigenvalue):
            rec.extend(range(b.start, b.start + head))
            nonrec.extend(range(b.start + head, b.start + b.dim))
        else:
            nonrec.extend(b.coords)
    return SpaceSplit(tuple(sorted(rec)), tuple(sorted(nonrec)))


def is_modulus_one(lam: AlgebraicNumber) -> bool:
    if lam.is_rational():
        return abs(lam.as_fraction()) == 1
    return lam.modulus_sq() == 1

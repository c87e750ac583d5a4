"""Exact expressions over algebraic roots.

An AlgExpr is a polynomial with rational coefficients in finitely many root
symbols (each a specific root of an irreducible integer polynomial), kept
reduced modulo each symbol's minimal polynomial.  Jordan chains computed in
Q[y]/(f) are specialised to concrete roots this way, so every entry of Q, J
and Q^-1 is exact.

Zero testing uses a Liouville-type bound: for a nonzero value the product of
its conjugates is a nonzero algebraic integer (after clearing denominators),
which bounds |E| from below; an interval enclosure narrower than that bound
therefore decides E = 0 exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm

from ..core.algebraic import AlgebraicNumber, _select
from ..core.factor import factor
from ..core.interval import CI, RI
from ..core.linear import charpoly
from ..core.poly import IntPolynomial
from ..core import roots as _roots
from ..core.roots import _canonical_roots, cauchy_bound
from ..errors import NotReal, PrecisionCapExceeded
from .numfield import NumberField

_SYMS: dict[tuple, "Sym"] = {}
_FIELDS: dict[tuple, NumberField] = {}


def _field(coeffs: tuple) -> NumberField:
    K = _FIELDS.get(coeffs)
    if K is None:
        K = _FIELDS[coeffs] = NumberField(IntPolynomial(coeffs))
    return K


class Sym:
    """A specific root of an irreducible polynomial, used as an expression variable."""

    __slots__ = ("key", "alg", "D", "lc", "R", "K", "_rows")

    def __init__(self, alg: AlgebraicNumber):
        self.alg = alg
        self.key = (alg.minpoly.coeffs, alg.index)
        self.D = alg.degree
        self.lc = abs(alg.minpoly.leading)
        self.R = cauchy_bound(alg.minpoly)
        self.K = _field(alg.minpoly.coeffs)
        self._rows: dict = {}

    @staticmethod
    def of(alg: AlgebraicNumber) -> "Sym":
        key = (alg.minpoly.coeffs, alg.index)
        s = _SYMS.get(key)
        if s is None:
            s = _SYMS[key] = Sym(alg)
        return s

    def conj(self) -> "Sym":
        return Sym.of(self.alg.conj())

    def reduce_power(self, e: int) -> tuple:
        row = self._rows.get(e)
        if row is None:
            row = self._rows[e] = self.K.reduce([Fraction(0)] * e + [Fraction(1)])
        return row

    def __repr__(self):
        return f"Sym({self.alg!r})"


def imag_unit() -> Sym:
    roots = _canonical_roots((1, 0, 1))
    idx = 0 if roots[0].im_lo > 0 else 1
    return Sym.of(AlgebraicNumber._from_index(IntPolynomial((1, 0, 1)), idx))


Mono = tuple  # tuple of (sym key, exponent) sorted by key


def _mono_mul(a: Mono, b: Mono) -> dict:
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return d


class AlgExpr:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, q) -> "AlgExpr":
        q = Fraction(q)
        return cls({(): q} if q else {})

    @classmethod
    def sym(cls, s: Sym) -> "AlgExpr":
        if s.D == 1:
            return cls.const(Fraction(-s.alg.minpoly.coeffs[0], s.alg.minpoly.coeffs[1]))
        return cls({((s.key, 1),): Fraction(1)})

    @classmethod
    def of_algebraic(cls, a: AlgebraicNumber) -> "AlgExpr":
        if a.is_rational():
            return cls.const(a.as_fraction())
        return cls.sym(Sym.of(a))

    @classmethod
    def from_poly_at(cls, coeffs, s: Sym) -> "AlgExpr":
        """sum c_i s^i, coefficients already reduced modulo s's polynomial."""
        if s.D == 1:
            v = Fraction(-s.alg.minpoly.coeffs[0], s.alg.minpoly.coeffs[1])
            return cls.const(sum((Fraction(c) * v**i for i, c in enumerate(coeffs)), Fraction(0)))
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[((s.key, i),) if i else ()] = Fraction(c)
        return cls(terms)

    @staticmethod
    def coerce(x) -> "AlgExpr":
        if isinstance(x, AlgExpr):
            return x
        if isinstance(x, (int, Fraction)):
            return AlgExpr.const(x)
        if isinstance(x, AlgebraicNumber):
            return AlgExpr.of_algebraic(x)
        raise TypeError(f"cannot convert {type(x).__name__} to AlgExpr")

    # -- ring operations ------------------------------------------------
    def __add__(self, o) -> "AlgExpr":
        o = AlgExpr.coerce(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return AlgExpr(t)

    __radd__ = __add__

    def __neg__(self) -> "AlgExpr":
        return AlgExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, o) -> "AlgExpr":
        return self + (-AlgExpr.coerce(o))

    def __rsub__(self, o) -> "AlgExpr":
        return AlgExpr.coerce(o) - self

    def __mul__(self, o) -> "AlgExpr":
        if isinstance(o, (int, Fraction)):
            o = Fraction(o)
            return AlgExpr({m: c * o for m, c in self.terms.items()})
        o = AlgExpr.coerce(o)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                for m, c in _reduce_mono(_mono_mul(m1, m2)):
                    out[m] = out.get(m, 0) + c1 * c2 * c
        return AlgExpr(out)

    __rmul__ = __mul__

    def __truediv__(self, q) -> "AlgExpr":
        if not isinstance(q, (int, Fraction)):
            raise TypeError("AlgExpr only supports division by rationals")
        return self * (1 / Fraction(q))

    def __pow__(self, k: int) -> "AlgExpr":
        out = AlgExpr.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj(self) -> "AlgExpr":
        out: dict = {}
        for m, c in self.terms.items():
            d = {}
            for k, e in m:
                ck = Sym.of(_SYMS[k].alg).conj().key
                d[ck] = d.get(ck, 0) + e
            mm = tuple(sorted(d.items()))
            out[mm] = out.get(mm, 0) + c
        return AlgExpr(out)

    # -- structure ------------------------------------------------------
    def symbols(self) -> list[Sym]:
        keys = sorted({k for m in self.terms for k, _ in m})
        return [_SYMS[k] for k in keys]

    def is_rational(self) -> bool:
        return all(m == () for m in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("expression is not a rational constant")
        return self.terms.get((), Fraction(0))

    def is_structurally_zero(self) -> bool:
        return not self.terms

    # -- numerics -------------------------------------------------------
    def enclosure(self, prec: int) -> CI:
        guard = max(8, len(self.terms).bit_length() + 4)
        p = prec + guard
        cache: dict = {}
        total = CI(RI(0, 0, p), RI(0, 0, p))
        for m, c in self.terms.items():
            term = CI.from_rational(c, p)
            for k, e in m:
                key = (k, e)
                v = cache.get(key)
                if v is None:
                    base = cache.get((k, 1))
                    if base is None:
                        base = cache[(k, 1)] = _SYMS[k].alg.enclosure(p)
                    v = cache[key] = base**e
                term = term * v
            total = total + term
        return total.with_prec(prec)

    def _liouville_bits(self) -> int:
        """-log2 of a lower bound on |E| valid whenever E != 0."""
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        maxe: dict = {}
        for m in self.terms:
            for k, e in m:
                maxe[k] = max(maxe.get(k, 0), e)
        lead = 1
        for k, e in maxe.items():
            lead *= _SYMS[k].lc ** e
        S = Fraction(0)
        for m, c in self.terms.items():
            t = abs(c * den)
            for k, e in m:
                t *= _SYMS[k].R ** e
            S += t
        B = lead * S
        groups: dict = {}
        for k in maxe:
            groups.setdefault(k[0], set()).add(k[1])
        N = 1
        for coeffs, idxs in groups.items():
            D = len(coeffs) - 1
            N *= factorial(D) // factorial(D - len(idxs))
        logB = max(0, B.numerator.bit_length() - B.denominator.bit_length() + 1)
        return den.bit_length() + lead.bit_length() + (N - 1) * logB + 2

    def _decide(self, want_sign: bool) -> int:
        """0 if E == 0, else sign (want_sign) or 1."""
        if not self.terms:
            return 0
        if self.is_rational():
            q = self.as_fraction()
            return (q > 0) - (q < 0)
        need = self._liouville_bits()
        prec = 64
        while True:
            e = self.enclosure(prec)
            mag = max(abs(e.re.lo), abs(e.re.hi)) + max(abs(e.im.lo), abs(e.im.hi))
            # |E| <= mag * 2^-p < 2^-need  =>  E == 0
            if mag.bit_length() <= e.p - need - 1:
                return 0
            if want_sign:
                s = e.re.sign()
                if s:
                    return s
                if not e.im.contains_zero():
                    raise NotReal("sign of a non-real expression")
            elif not e.contains_zero():
                return 1
            if prec > max(_roots.PRECISION_CAP, 2 * need + 256):
                raise PrecisionCapExceeded("zero test undecided")
            prec = min(2 * prec, need + 64) if prec < need + 64 else 2 * prec

    def is_zero(self) -> bool:
        return self._decide(False) == 0

    def sign(self) -> int:
        return self._decide(True)

    def equals(self, o) -> bool:
        return (self - AlgExpr.coerce(o)).is_zero()

    def approx(self) -> complex:
        e = self.enclosure(60)
        return complex(float(e.re.mid()), float(e.im.mid()))

    def to_algebraic(self, max_degree: int = 64) -> AlgebraicNumber:
        if self.is_rational():
            return AlgebraicNumber.from_rational(self.as_fraction())
        syms = self.symbols()
        dims = [s.D for s in syms]
        basis: list[dict] = [{}]
        for s, D in zip(syms, dims):
            basis = [dict(b, **{}) | ({s.key: j} if j else {}) for b in basis for j in range(D)]
        index = {tuple(sorted(b.items())): i for i, b in enumerate(basis)}
        n = len(basis)
        M = [[Fraction(0)] * n for _ in range(n)]
        for j, b in enumerate(basis):
            prod = self * AlgExpr({tuple(sorted(b.items())): Fraction(1)})
            for m, c in prod.terms.items():
                M[index[m]][j] += c
        cp = IntPolynomial.from_rationals(charpoly(M)).squarefree_part()
        return _select(factor(cp, max_degree), self.enclosure, max_degree=max_degree)

    def __repr__(self) -> str:
        if self.is_rational():
            return f"AlgExpr({self.as_fraction()})"
        return f"AlgExpr(~{self.approx():.6g}, {len(self.terms)} terms)"


def _reduce_mono(d: dict) -> list[tuple[Mono, Fraction]]:
    """Expand a monomial (as exponent dict) into reduced monomials."""
    out = [((), Fraction(1))]
    for k in sorted(d):
        e = d[k]
        if e == 0:
            continue
        s = _SYMS[k]
        if e < s.D:
            out = [(m + ((k, e),), c) for m, c in out]
        else:
            row = s.reduce_power(e)
            new = []
            for m, c in out:
                for i, r in enumerate(row):
                    if r:
                        new.append((m + ((k, i),) if i else m, c * r))
            out = new
    return out


def matrix_is_zero(M) -> bool:
    return all(AlgExpr.coerce(x).is_zero() for row in M for x in row)

"""Exact algebraic numbers: an irreducible minimal polynomial plus an
isolating rectangle for one of its roots."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..errors import DivisionByZero, NotReal, ParseError, PrecisionCapExceeded, UnsupportedDegree
from .factor import factor, is_irreducible
from .interval import CI, RI, Rect
from .linear import charpoly, companion, identity, kron
from .poly import IntPolynomial
from .rational import fmt_rational, parse_rational, sqrt_lower, sqrt_upper
from . import roots as _roots
from .roots import _canonical_roots, refine_complex

MAX_DEGREE = 16

# best known isolating box per (minpoly coefficients, root index)
_REFINED: dict[tuple, Rect] = {}


def _root_box(coeffs: tuple, idx: int) -> Rect:
    return _REFINED.get((coeffs, idx)) or _canonical_roots(coeffs)[idx]


def _refine_root(coeffs: tuple, idx: int, width: Fraction) -> Rect:
    box = _root_box(coeffs, idx)
    if box.width <= width:
        return box
    nb = refine_complex(IntPolynomial(coeffs), box, width)
    _REFINED[(coeffs, idx)] = nb
    return nb


def _locate(coeffs: tuple, box: Rect) -> int:
    """Index of the unique canonical root of coeffs lying in box."""
    roots = _canonical_roots(coeffs)
    cands = [i for i, r in enumerate(roots) if r.intersects(box)]
    width = Fraction(1)
    while True:
        inside = [i for i in cands if box.contains(_root_box(coeffs, i))]
        if len(inside) > 1:
            raise ValueError("box contains more than one root")
        cands = [i for i in cands if _root_box(coeffs, i).intersects(box)]
        if not cands:
            raise ValueError("box contains no root of the polynomial")
        if len(cands) == 1 and inside == cands:
            return cands[0]
        width /= 4
        if width < Fraction(1, 1 << _roots.PRECISION_CAP):
            raise PrecisionCapExceeded("could not locate root inside box")
        for i in cands:
            _refine_root(coeffs, i, width)


def normalize_minpoly(p: IntPolynomial) -> IntPolynomial:
    return p.primitive_part()


class AlgebraicNumber:
    __slots__ = ("minpoly", "box", "_idx")

    def __init__(self, minpoly: IntPolynomial, box: Rect, _idx: int | None = None, check: bool = True):
        if check:
            if minpoly.degree < 1:
                raise ValueError("minimal polynomial must have positive degree")
            if minpoly.degree > MAX_DEGREE:
                raise UnsupportedDegree(f"degree {minpoly.degree} exceeds {MAX_DEGREE}")
            if minpoly != minpoly.primitive_part() or not is_irreducible(minpoly):
                raise ValueError(f"{minpoly} is not an irreducible primitive polynomial")
        self.minpoly = minpoly
        self.box = box
        self._idx = _locate(minpoly.coeffs, box) if _idx is None else _idx

    # -- constructors ---------------------------------------------------
    @classmethod
    def _from_index(cls, p: IntPolynomial, idx: int) -> "AlgebraicNumber":
        return cls(p, _root_box(p.coeffs, idx), idx, check=False)

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        p = IntPolynomial((-q.numerator, q.denominator))
        return cls(p, Rect(q, q), 0, check=False)

    @classmethod
    def roots_of(cls, p: IntPolynomial, max_degree: int = MAX_DEGREE) -> list["AlgebraicNumber"]:
        """All distinct complex roots of p (grouped by irreducible factor)."""
        out = []
        for f, _ in factor(p):
            if f.degree > max_degree:
                raise UnsupportedDegree(f"factor of degree {f.degree} exceeds {max_degree}")
            for i in range(len(_canonical_roots(f.coeffs))):
                out.append(cls._from_index(f, i))
        return out

    @classmethod
    def gaussian(cls, re, im) -> "AlgebraicNumber":
        """re + i*im for rationals re, im."""
        re, im = Fraction(re), Fraction(im)
        if im == 0:
            return cls.from_rational(re)
        # (x - re)^2 + im^2
        p = IntPolynomial.from_rationals([re * re + im * im, -2 * re, 1]).primitive_part()
        roots = _canonical_roots(p.coeffs)
        idx = 0 if (im > 0) == (roots[0].im_lo > 0) else 1
        return cls._from_index(p, idx)

    # -- structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def height(self) -> int:
        return self.minpoly.height

    @property
    def index(self) -> int:
        return self._idx

    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        c0, c1 = self.minpoly.coeffs
        return Fraction(-c0, c1)

    def is_real(self) -> bool:
        return _root_box(self.minpoly.coeffs, self._idx).is_real()

    def is_zero(self) -> bool:
        return self.minpoly.coeffs == (0, 1)

    # -- refinement -----------------------------------------------------
    def refine(self, width) -> "AlgebraicNumber":
        nb = _refine_root(self.minpoly.coeffs, self._idx, Fraction(width))
        return AlgebraicNumber(self.minpoly, nb, self._idx, check=False)

    def current_box(self) -> Rect:
        return _root_box(self.minpoly.coeffs, self._idx)

    def enclosure(self, prec: int) -> CI:
        if self.is_rational():
            return CI.from_rational(self.as_fraction(), prec)
        b = _refine_root(self.minpoly.coeffs, self._idx, Fraction(1, 1 << prec))
        return b.to_ci(prec)

    def real_enclosure(self, prec: int) -> RI:
        if not self.is_real():
            raise NotReal("number is not real")
        return self.enclosure(prec).re

    def approx(self) -> complex:
        b = self.refine(Fraction(1, 1 << 60)).box
        return complex(float((b.re_lo + b.re_hi) / 2), float((b.im_lo + b.im_hi) / 2))

    # -- arithmetic -----------------------------------------------------
    def conj(self) -> "AlgebraicNumber":
        if self.is_real():
            return self
        b = self.current_box().conj()
        return AlgebraicNumber(self.minpoly, b, _locate(self.minpoly.coeffs, b), check=False)

    def __neg__(self) -> "AlgebraicNumber":
        p = self.minpoly.reflect().primitive_part()
        b = self.current_box()
        nb = Rect(-b.re_hi, -b.re_lo, -b.im_hi, -b.im_lo)
        return AlgebraicNumber(p, nb, _locate(p.coeffs, nb), check=False)

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return AlgebraicNumber.from_rational(1 / self.as_fraction())
        p = IntPolynomial(reversed(self.minpoly.coeffs)).primitive_part()
        return _select([(p, 1)], self.enclosure_fn(lambda z: 1 / z))

    def enclosure_fn(self, fn):
        return lambda prec: fn(self.enclosure(prec))

    def __add__(self, other):
        return alg_op("add", self, _coerce(other))

    def __radd__(self, other):
        return alg_op("add", _coerce(other), self)

    def __sub__(self, other):
        return alg_op("sub", self, _coerce(other))

    def __rsub__(self, other):
        return alg_op("sub", _coerce(other), self)

    def __mul__(self, other):
        return alg_op("mul", self, _coerce(other))

    def __rmul__(self, other):
        return alg_op("mul", _coerce(other), self)

    def __truediv__(self, other):
        return alg_op("div", self, _coerce(other))

    def __rtruediv__(self, other):
        return alg_op("div", _coerce(other), self)

    def __pow__(self, k: int) -> "AlgebraicNumber":
        if k < 0:
            return (self ** (-k)).inverse()
        if k == 0:
            return AlgebraicNumber.from_rational(1)
        if self.is_rational():
            return AlgebraicNumber.from_rational(self.as_fraction() ** k)
        # eigenvalues of C^k are the k-th powers of the conjugates
        C = _companion_of(self.minpoly)
        P = identity(len(C))
        B, e = C, k
        from .linear import mat_mul

        while e:
            if e & 1:
                P = mat_mul(P, B)
            e >>= 1
            if e:
                B = mat_mul(B, B)
        cp = IntPolynomial.from_rationals(charpoly(P))
        return _select(factor(cp), lambda prec: self.enclosure(prec) ** k)

    def sign(self) -> int:
        return alg_sign(self)

    def sqrt(self) -> "AlgebraicNumber":
        """Nonnegative square root of a nonnegative real number."""
        if self.sign() < 0:
            raise NotReal("square root of a negative number")
        if self.is_zero():
            return self
        if self.is_rational():
            q = self.as_fraction()
            from math import isqrt

            n, d = isqrt(q.numerator), isqrt(q.denominator)
            if n * n == q.numerator and d * d == q.denominator:
                return AlgebraicNumber.from_rational(Fraction(n, d))
        p = IntPolynomial([x for c in self.minpoly.coeffs for x in (c, 0)][:-1])

        def enclose(prec):
            r = self.real_enclosure(prec + 4)
            lo = sqrt_lower(max(r.lower, Fraction(0)), prec + 4)
            hi = sqrt_upper(max(r.upper, Fraction(0)), prec + 4)
            return CI(RI.from_bounds(lo, hi, prec), RI(0, 0, prec))

        return _select(factor(p), enclose)

    def modulus_sq(self) -> "AlgebraicNumber":
        return alg_op("modulus_sq", self)

    def _cmp(self, other) -> int:
        return alg_sign(self - _coerce(other))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.from_rational(other)
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.minpoly == other.minpoly and self._idx == other._idx

    def __hash__(self) -> int:
        return hash((self.minpoly.coeffs, self._idx))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"AlgebraicNumber({fmt_rational(self.as_fraction())})"
        z = self.approx()
        return f"AlgebraicNumber(root of {self.minpoly} near {z:.6g})"

    # -- serialization --------------------------------------------------
    def simple_box(self) -> Rect:
        """An isolating box with short dyadic endpoints, for display and JSON."""
        if self.is_rational():
            q = self.as_fraction()
            return Rect(q, q)
        coeffs = self.minpoly.coeffs
        others = [j for j in range(len(_canonical_roots(coeffs))) if j != self._idx]
        k = 8
        while True:
            w = Fraction(1, 1 << k)
            b = _refine_root(coeffs, self._idx, w)
            cand = Rect(
                _floor_to(b.re_lo, k),
                _ceil_to(b.re_hi, k),
                _floor_to(b.im_lo, k) if not b.is_real() else 0,
                _ceil_to(b.im_hi, k) if not b.is_real() else 0,
            )
            if all(not _refine_root(coeffs, j, w).intersects(cand) for j in others):
                return cand
            k *= 2
            if k > _roots.PRECISION_CAP:
                raise PrecisionCapExceeded("could not simplify isolating box")

    def to_json(self) -> dict:
        b = self.simple_box()
        return {
            "minpoly": self.minpoly.to_json(),
            "box": {"re": [fmt_rational(b.re_lo), fmt_rational(b.re_hi)], "im": [fmt_rational(b.im_lo), fmt_rational(b.im_hi)]},
        }

    @classmethod
    def from_json(cls, data) -> "AlgebraicNumber":
        try:
            p = IntPolynomial.from_json(data["minpoly"])
            re = [parse_rational(s) for s in data["box"]["re"]]
            im = [parse_rational(s) for s in data["box"]["im"]]
            return cls(p, Rect(re[0], re[1], im[0], im[1]))
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"bad algebraic number {data!r}") from exc


def _floor_to(q: Fraction, k: int) -> Fraction:
    return Fraction((q.numerator << k) // q.denominator, 1 << k)


def _ceil_to(q: Fraction, k: int) -> Fraction:
    return Fraction(-((-q.numerator << k) // q.denominator), 1 << k)


def _coerce(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicNumber.from_rational(x)
    raise TypeError(f"cannot combine AlgebraicNumber with {type(x).__name__}")


def _companion_of(p: IntPolynomial):
    lc = p.leading
    return companion([Fraction(c, lc) for c in p.coeffs])


def _select(factors: Iterable[tuple[IntPolynomial, int]], enclose, max_degree: int = MAX_DEGREE) -> AlgebraicNumber:
    """Pick the unique root among the factors' roots consistent with an enclosure."""
    cands = []
    for f, _ in factors:
        if f.degree > max_degree:
            raise UnsupportedDegree(f"result degree {f.degree} exceeds {max_degree}")
        for i in range(len(_canonical_roots(f.coeffs))):
            cands.append((f, i))
    prec = 32
    while True:
        e = enclose(prec)
        lo_re, hi_re, lo_im, hi_im = e.re.lower, e.re.upper, e.im.lower, e.im.upper
        er = Rect(lo_re, hi_re, lo_im, hi_im)
        width = max(er.width, Fraction(1, 1 << prec))
        cands = [(f, i) for f, i in cands if _refine_root(f.coeffs, i, width).intersects(er)]
        if len(cands) == 1:
            f, i = cands[0]
            return AlgebraicNumber._from_index(f, i)
        if not cands:
            raise PrecisionCapExceeded("no candidate root matches the enclosure")
        prec *= 2
        if prec > _roots.PRECISION_CAP:
            raise PrecisionCapExceeded("could not separate candidate roots")


def alg_sign(a: AlgebraicNumber) -> int:
    if not a.is_real():
        raise NotReal("sign of a non-real algebraic number")
    if a.is_rational():
        q = a.as_fraction()
        return (q > 0) - (q < 0)
    prec = 16
    while prec <= _roots.PRECISION_CAP:
        s = a.real_enclosure(prec).sign()
        if s:
            return s
        prec *= 2
    raise PrecisionCapExceeded("sign undecided at precision cap")


def alg_op(op: str, a: AlgebraicNumber, b: AlgebraicNumber | None = None) -> AlgebraicNumber:
    """Exact arithmetic on algebraic numbers."""
    if op == "conj":
        return a.conj()
    if op == "modulus_sq":
        if a.is_real():
            return alg_op("mul", a, a)
        return alg_op("mul", a, a.conj())
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        if a.is_zero():
            return a
        b = b.inverse()
        op = "mul"
    elif op == "sub":
        b = -b
        op = "add"
    if op not in ("add", "mul"):
        raise ValueError(f"unknown operation {op!r}")
    if a.is_rational() and b.is_rational():
        x, y = a.as_fraction(), b.as_fraction()
        return AlgebraicNumber.from_rational(x + y if op == "add" else x * y)
    if op == "mul" and (a.is_zero() or b.is_zero()):
        return AlgebraicNumber.from_rational(0)
    Ca, Cb = _companion_of(a.minpoly), _companion_of(b.minpoly)
    if op == "add":
        M = kron(Ca, identity(len(Cb)))
        N = kron(identity(len(Ca)), Cb)
        M = [[x + y for x, y in zip(r, s)] for r, s in zip(M, N)]
        enclose = lambda prec: a.enclosure(prec) + b.enclosure(prec)
    else:
        M = kron(Ca, Cb)
        enclose = lambda prec: a.enclosure(prec) * b.enclosure(prec)
    cp = IntPolynomial.from_rationals(charpoly(M)).squarefree_part()
    return _select(factor(cp), enclose)


def min_poly(a: AlgebraicNumber) -> IntPolynomial:
    return a.minpoly

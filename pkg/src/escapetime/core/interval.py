"""Outward-rounded fixed-point interval arithmetic.

A real interval at precision p is a pair of integers (lo, hi) standing for
[lo * 2**-p, hi * 2**-p].  All operands of one operation share p; results are
rounded outward so every operation encloses the exact real result.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def floor_scaled(q: Fraction, p: int) -> int:
    q = Fraction(q)
    return (q.numerator << p) // q.denominator


def ceil_scaled(q: Fraction, p: int) -> int:
    q = Fraction(q)
    return -((-q.numerator << p) // q.denominator)


class RI:
    __slots__ = ("lo", "hi", "p")

    def __init__(self, lo: int, hi: int, p: int):
        self.lo, self.hi, self.p = lo, hi, p

    @classmethod
    def from_rational(cls, q, p: int) -> "RI":
        return cls(floor_scaled(q, p), ceil_scaled(q, p), p)

    @classmethod
    def from_bounds(cls, lo, hi, p: int) -> "RI":
        return cls(floor_scaled(lo, p), ceil_scaled(hi, p), p)

    def _coerce(self, other) -> "RI":
        if isinstance(other, RI):
            return other
        return RI.from_rational(other, self.p)

    def with_prec(self, p: int) -> "RI":
        if p >= self.p:
            return RI(self.lo << (p - self.p), self.hi << (p - self.p), p)
        s = self.p - p
        return RI(self.lo >> s, -((-self.hi) >> s), p)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.lo, 1 << self.p)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.hi, 1 << self.p)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.p)

    def mid(self) -> Fraction:
        return Fraction(self.lo + self.hi, 2 << self.p)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """+1/-1 when the interval excludes zero, 0 when it is exactly [0,0]."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        return None

    def mag(self) -> int:
        """Scaled upper bound of |x|."""
        return max(abs(self.lo), abs(self.hi))

    def __add__(self, other) -> "RI":
        o = self._coerce(other)
        return RI(self.lo + o.lo, self.hi + o.hi, self.p)

    __radd__ = __add__

    def __neg__(self) -> "RI":
        return RI(-self.hi, -self.lo, self.p)

    def __sub__(self, other) -> "RI":
        o = self._coerce(other)
        return RI(self.lo - o.hi, self.hi - o.lo, self.p)

    def __rsub__(self, other) -> "RI":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RI":
        if isinstance(other, int):
            if other >= 0:
                return RI(self.lo * other, self.hi * other, self.p)
            return RI(self.hi * other, self.lo * other, self.p)
        o = self._coerce(other)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        p = self.p
        return RI(min(cands) >> p, -((-max(cands)) >> p), p)

    __rmul__ = __mul__

    def sqr(self) -> "RI":
        p = self.p
        a, b = self.lo, self.hi
        if a >= 0:
            lo2, hi2 = a * a, b * b
        elif b <= 0:
            lo2, hi2 = b * b, a * a
        else:
            lo2, hi2 = 0, max(a * a, b * b)
        return RI(lo2 >> p, -((-hi2) >> p), p)

    def __pow__(self, k: int) -> "RI":
        if k == 0:
            return RI(1 << self.p, 1 << self.p, self.p)
        if k % 2 == 0:
            return self.sqr() ** (k // 2)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def inv(self) -> "RI":
        if self.lo <= 0 <= self.hi:
            raise DivisionByZero("interval inverse of an interval containing zero")
        one = 1 << (2 * self.p)
        return RI(_floor_div(one, self.hi), _ceil_div(one, self.lo), self.p)

    def __truediv__(self, other) -> "RI":
        return self * self._coerce(other).inv()

    def __repr__(self) -> str:
        return f"RI[{float(self.lower):.6g}, {float(self.upper):.6g}]@{self.p}"


class CI:
    """Rectangular complex interval."""

    __slots__ = ("re", "im")

    def __init__(self, re: RI, im: RI):
        self.re, self.im = re, im

    @property
    def p(self) -> int:
        return self.re.p

    @classmethod
    def from_rational(cls, q, p: int) -> "CI":
        return cls(RI.from_rational(q, p), RI(0, 0, p))

    @classmethod
    def from_rect(cls, re_lo, re_hi, im_lo, im_hi, p: int) -> "CI":
        return cls(RI.from_bounds(re_lo, re_hi, p), RI.from_bounds(im_lo, im_hi, p))

    def _coerce(self, other) -> "CI":
        if isinstance(other, CI):
            return other
        if isinstance(other, RI):
            return CI(other, RI(0, 0, self.p))
        return CI.from_rational(other, self.p)

    def __add__(self, other) -> "CI":
        o = self._coerce(other)
        return CI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "CI":
        return CI(-self.re, -self.im)

    def __sub__(self, other) -> "CI":
        o = self._coerce(other)
        return CI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "CI":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CI":
        if isinstance(other, int):
            return CI(self.re * other, self.im * other)
        o = self._coerce(other)
        if o.im.lo == 0 == o.im.hi:
            return CI(self.re * o.re, self.im * o.re)
        if self.im.lo == 0 == self.im.hi:
            return CI(self.re * o.re, self.re * o.im)
        return CI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CI":
        out = CI(RI(1 << self.p, 1 << self.p, self.p), RI(0, 0, self.p))
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj(self) -> "CI":
        return CI(self.re, -self.im)

    def with_prec(self, p: int) -> "CI":
        return CI(self.re.with_prec(p), self.im.with_prec(p))

    def abs2(self) -> RI:
        return self.re.sqr() + self.im.sqr()

    def __truediv__(self, other) -> "CI":
        o = self._coerce(other)
        d = o.abs2().inv()
        num = self * o.conj()
        return CI(num.re * d, num.im * d)

    def __rtruediv__(self, other) -> "CI":
        return self._coerce(other) / self

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def is_exact_zero(self) -> bool:
        return self.re.lo == self.re.hi == 0 and self.im.lo == self.im.hi == 0

    def intersects_rect(self, re_lo, re_hi, im_lo, im_hi) -> bool:
        return not (
            self.re.upper < re_lo or self.re.lower > re_hi or self.im.upper < im_lo or self.im.lower > im_hi
        )

    def __repr__(self) -> str:
        return f"CI({self.re!r}, {self.im!r})"


class Rect:
    """Closed rational rectangle [re_lo, re_hi] x [im_lo, im_hi]."""

    __slots__ = ("re_lo", "re_hi", "im_lo", "im_hi")

    def __init__(self, re_lo, re_hi, im_lo=0, im_hi=0):
        self.re_lo, self.re_hi = Fraction(re_lo), Fraction(re_hi)
        self.im_lo, self.im_hi = Fraction(im_lo), Fraction(im_hi)
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("empty rectangle")

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def is_real(self) -> bool:
        return self.im_lo == 0 == self.im_hi

    def contains(self, other: "Rect") -> bool:
        return (
            self.re_lo <= other.re_lo
            and other.re_hi <= self.re_hi
            and self.im_lo <= other.im_lo
            and other.im_hi <= self.im_hi
        )

    def intersects(self, other: "Rect") -> bool:
        return not (
            other.re_hi < self.re_lo
            or other.re_lo > self.re_hi
            or other.im_hi < self.im_lo
            or other.im_lo > self.im_hi
        )

    def conj(self) -> "Rect":
        return Rect(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo)

    def to_ci(self, p: int) -> CI:
        return CI.from_rect(self.re_lo, self.re_hi, self.im_lo, self.im_hi, p)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rect) and (self.re_lo, self.re_hi, self.im_lo, self.im_hi) == (
            other.re_lo,
            other.re_hi,
            other.im_lo,
            other.im_hi,
        )

    def __hash__(self):
        return hash((self.re_lo, self.re_hi, self.im_lo, self.im_hi))

    def __repr__(self) -> str:
        return f"Rect([{self.re_lo}, {self.re_hi}] x [{self.im_lo}, {self.im_hi}])"

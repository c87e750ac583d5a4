"""Rational helpers: coercion, bitsize, and the "p/q" string form."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import ParseError


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ParseError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"expected a 'p/q' string, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def fmt_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def bitsize(c: int) -> int:
    """floor(log2(max(|c|, 1))) + 1."""
    return max(abs(int(c)), 1).bit_length()


def rat_bitsize(q) -> int:
    q = Fraction(q)
    return max(bitsize(q.numerator), bitsize(q.denominator))


def floor_log2(q: Fraction) -> int:
    """Largest k with 2**k <= q, for q > 0."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    k = q.numerator.bit_length() - q.denominator.bit_length()
    if Fraction(2) ** k > q:
        k -= 1
    return k


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    """A rational upper bound on sqrt(q) with relative error about 2**-bits."""
    from math import isqrt

    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    if q == 0:
        return Fraction(0)
    scale = 2 * bits + max(0, q.denominator.bit_length() - q.numerator.bit_length())
    m = (q.numerator << (2 * scale)) // q.denominator
    r = isqrt(m)
    if r * r < m or (q.numerator << (2 * scale)) % q.denominator:
        r += 1
    return Fraction(r, 1 << scale)


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    from math import isqrt

    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    scale = 2 * bits + max(0, q.denominator.bit_length() - q.numerator.bit_length())
    m = (q.numerator << (2 * scale)) // q.denominator
    return Fraction(isqrt(m), 1 << scale)

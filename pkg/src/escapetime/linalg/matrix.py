"""Rational matrices: JSON form, characteristic polynomial, basic helpers."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from ..core.linear import charpoly, companion
from ..core.poly import IntPolynomial
from ..core.rational import fmt_rational, parse_rational
from ..errors import ParseError

Matrix = list  # list of rows


def as_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    A = [[Fraction(x) if not isinstance(x, str) else parse_rational(x) for x in r] for r in rows]
    n = len(A)
    if n == 0 or any(len(r) != n for r in A):
        raise ValueError("matrix must be square and nonempty")
    return A


def matrix_from_json(data) -> list[list[Fraction]]:
    try:
        n = data["n"]
        rows = data["rows"]
    except (TypeError, KeyError) as exc:
        raise ParseError("matrix JSON needs 'n' and 'rows'") from exc
    if not isinstance(n, int) or not isinstance(rows, list) or len(rows) != n:
        raise ParseError("matrix JSON: 'rows' must have n entries")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise ParseError("matrix JSON: each row needs n entries")
        out.append([parse_rational(x) for x in r])
    return out


def matrix_to_json(A) -> dict:
    return {"n": len(A), "rows": [[fmt_rational(x) for x in r] for r in A]}


def char_poly(A) -> tuple[IntPolynomial, Fraction]:
    """Characteristic polynomial det(xI - A) as (primitive integer polynomial, content).

    The monic characteristic polynomial equals content * primitive.
    """
    cp = charpoly(as_matrix(A))
    prim = IntPolynomial.from_rationals(cp).primitive_part()
    return prim, Fraction(1, prim.leading)


def companion_matrix(p: IntPolynomial) -> list[list[Fraction]]:
    lc = p.leading
    return companion([Fraction(c, lc) for c in p.coeffs])


def rotation(a, b) -> list[list[Fraction]]:
    a, b = Fraction(a), Fraction(b)
    return [[a, -b], [b, a]]


def random_rational_matrix(n: int, seed: int, num_range: int = 5, den_range: int = 3) -> list[list[Fraction]]:
    rng = random.Random(seed)
    return [
        [Fraction(rng.randint(-num_range, num_range), rng.randint(1, den_range)) for _ in range(n)]
        for _ in range(n)
    ]


def mat_apply(A, x):
    return [sum((a * xi for a, xi in zip(row, x) if a), 0) for row in A]


def is_zero_matrix(A) -> bool:
    return all(x == 0 for r in A for x in r)

"""Factorization over the integers, delegated to sympy."""
from __future__ import annotations

from functools import lru_cache

import sympy

from ..errors import UnsupportedDegree
from .poly import IntPolynomial

# The public contract caps user-facing minimal polynomials at degree 16;
# intermediate composed polynomials may be larger.
MAX_FACTOR_DEGREE = 64

_X = sympy.Symbol("x")


@lru_cache(maxsize=4096)
def _factor_cached(coeffs: tuple) -> tuple:
    poly = sympy.Poly(list(reversed(coeffs)), _X, domain="ZZ")
    _, facs = poly.factor_list()
    out = []
    for f, mult in facs:
        cs = [int(c) for c in reversed(f.all_coeffs())]
        out.append((IntPolynomial(cs).primitive_part(), mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return tuple(out)


def factor(p: IntPolynomial, max_degree: int = MAX_FACTOR_DEGREE) -> list[tuple[IntPolynomial, int]]:
    """Irreducible primitive factors with positive leading coefficient and multiplicities."""
    if p.degree > max_degree:
        raise UnsupportedDegree(f"degree {p.degree} exceeds factorization cap {max_degree}")
    if p.degree <= 0:
        return []
    return list(_factor_cached(p.coeffs))


def is_irreducible(p: IntPolynomial) -> bool:
    if p.degree <= 0:
        return False
    fs = factor(p)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0] == p.primitive_part()

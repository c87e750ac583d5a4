"""Fixed and seeded inputs shared by the acceptance suite, the CLI and the demos."""
from __future__ import annotations

import random
from fractions import Fraction

from .core.algebraic import AlgebraicNumber
from .core.factor import is_irreducible
from .core.poly import IntPolynomial
from .linalg.matrix import companion_matrix, random_rational_matrix, rotation


def named_matrices() -> dict[str, list[list[Fraction]]]:
    F = Fraction
    return {
        "rotation(3/5,4/5)": rotation(F(3, 5), F(4, 5)),
        "shear": [[F(1), F(1)], [F(0), F(1)]],
        "[[0,2],[1,0]]": [[F(0), F(2)], [F(1), F(0)]],
        "quarter-turn": [[F(0), F(-1)], [F(1), F(0)]],
        "companion(x^3-2)": companion_matrix(IntPolynomial((-2, 0, 0, 1))),
        "companion(x^4-x-1)": companion_matrix(IntPolynomial((-1, -1, 0, 0, 1))),
    }


def jordan_corpus() -> dict[str, list[list[Fraction]]]:
    """The six named matrices plus random 3x3 and 4x4 matrices with seeds 1 to 5."""
    out = named_matrices()
    for n in (3, 4):
        for seed in range(1, 6):
            out[f"random{n}x{n}(seed={seed})"] = random_rational_matrix(n, seed)
    return out


def pythagorean_point(s: Fraction) -> AlgebraicNumber:
    """((1 - s^2) + 2 s i) / (1 + s^2), a rational point on the unit circle."""
    d = 1 + s * s
    return AlgebraicNumber.gaussian((1 - s * s) / d, 2 * s / d)


def random_circle_point(rng: random.Random) -> AlgebraicNumber:
    s = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
    return pythagorean_point(s)


def random_algebraic(rng: random.Random, max_degree: int = 3, max_height: int = 10) -> AlgebraicNumber:
    """A root of a random irreducible integer polynomial with the given degree and height caps."""
    while True:
        d = rng.randint(1, max_degree)
        coeffs = [rng.randint(-max_height, max_height) for _ in range(d)] + [rng.randint(1, max_height)]
        p = IntPolynomial(tuple(coeffs))
        if p.primitive_part() != p or not is_irreducible(p):
            continue
        roots = AlgebraicNumber.roots_of(p)
        return roots[rng.randrange(len(roots))]


def random_block(rng: random.Random, max_size: int = 4):
    """(m, lambda, x0, eps) for one real Jordan block with eigenvalue in (0, 3)."""
    m = rng.randint(1, max_size)
    lam = Fraction(rng.randint(1, 29), 10)
    x0 = [Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(m)]
    eps = Fraction(rng.randint(1, 8), 4)
    return m, lam, x0, eps

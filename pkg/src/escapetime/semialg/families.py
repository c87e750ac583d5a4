"""Generators for the two example families: a rotation with a shrinking hole,
and an additive chain whose escape time is doubly exponential."""
from __future__ import annotations

from fractions import Fraction

from ..linalg.matrix import rotation
from .formula import And, Atom, EscapeInstance, SemialgebraicSet
from .multipoly import MultiPoly


def gen_rotation_instance(n: int, d: int, tau: int) -> EscapeInstance:
    """Variables (x, y, u_1..u_n): unit circle minus a small disk around (1, 0)."""
    if n < 1 or d < 1 or tau < 1:
        raise ValueError("need n, d, tau >= 1")
    N = n + 2
    x, y = MultiPoly.var(N, 0), MultiPoly.var(N, 1)
    u = [MultiPoly.var(N, 2 + i) for i in range(n)]
    ats = [Atom(x * x + y * y - 1, "eq"), Atom(u[0] * (2**tau) - 1, "eq")]
    for i in range(n - 1):
        ats.append(Atom(u[i + 1] - u[i] ** d, "eq"))
    ats.append(Atom((x - 1) ** 2 + y * y - u[n - 1], "ge"))
    K = SemialgebraicSet(N, And(tuple(ats)))
    A = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    R = rotation(Fraction(3, 5), Fraction(4, 5))
    for i in range(2):
        for j in range(2):
            A[i][j] = R[i][j]
    return EscapeInstance(A, K, "generated-example", {"family": "rotation", "n": n, "d": d, "tau": tau})


def gen_additive_instance(n: int, d: int, tau: int) -> EscapeInstance:
    """Variables (x_1..x_n, x_u): x_n grows by x_u = 1 each step until it passes x_{n-1}^d."""
    if n < 2 or d < 1 or tau < 1:
        raise ValueError("need n >= 2, d >= 1, tau >= 1")
    N = n + 1
    xs = [MultiPoly.var(N, i) for i in range(n)]
    xu = MultiPoly.var(N, n)
    ats = [Atom(xu - 1, "eq"), Atom(xs[0] - 2**tau, "eq")]
    for i in range(n - 2):
        ats.append(Atom(xs[i + 1] - xs[i] ** d, "eq"))
    ats.append(Atom(xs[n - 1], "ge"))
    ats.append(Atom(xs[n - 1] - xs[n - 2] ** d, "le"))
    K = SemialgebraicSet(N, And(tuple(ats)))
    A = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    A[n - 1][n] = Fraction(1)
    return EscapeInstance(A, K, "generated-example", {"family": "additive", "n": n, "d": d, "tau": tau})


def additive_start(n: int, d: int, tau: int) -> list[Fraction]:
    """(2^tau, 2^(tau d), ..., 0, 1): the slowest-escaping point."""
    xs = [Fraction(2**tau)]
    for _ in range(n - 2):
        xs.append(xs[-1] ** d)
    return xs + [Fraction(0), Fraction(1)]


def rotation_start(n: int, d: int, tau: int) -> list[Fraction]:
    """(-1, 0, u_1, ..., u_n) with u_1 = 2^-tau and u_{i+1} = u_i^d."""
    us = [Fraction(1, 2**tau)]
    for _ in range(n - 1):
        us.append(us[-1] ** d)
    return [Fraction(-1), Fraction(0)] + us


def unit_ball(n: int) -> SemialgebraicSet:
    p = sum((MultiPoly.var(n, i, 2) for i in range(n)), MultiPoly.const(n, -1))
    return SemialgebraicSet(n, Atom(p, "le"))


def unit_circle(n: int = 2) -> SemialgebraicSet:
    """x_1^2 + x_2^2 = 1, other coordinates in [-1, 1]."""
    p = MultiPoly.var(n, 0, 2) + MultiPoly.var(n, 1, 2) - 1
    ats = [Atom(p, "eq")]
    for i in range(2, n):
        ats.append(Atom(MultiPoly.var(n, i, 2) - 1, "le"))
    return SemialgebraicSet(n, And(tuple(ats)))

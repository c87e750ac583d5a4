"""Multiplicative relations among modulus-one algebraic numbers.

A relation is an integer vector beta with prod lambda_j^beta_j = 1.
Candidates come from a bounded exhaustive sweep (rigorously filtered by
angle enclosures) plus PSLQ on the angles; every relation that is kept is
verified with exact arithmetic. Completeness is only claimed inside the
coefficient box.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import mpmath
from sympy import totient

from .core.algebraic import AlgebraicNumber
from .dynamics.diophantine import Angle
from .errors import NotModulusOne
from .linalg.algexpr import AlgExpr
from .linalg.jordan import is_modulus_one

_SWEEP_LIMIT = 2_000_000


def hnf_rows(rows: Sequence[Sequence[int]], order: Sequence[int]) -> list[list[int]]:
    """Row echelon form over Z with positive pivots, pivots taken in column ``order``.

    Entries above each pivot are reduced into [0, pivot). Zero rows are dropped.
    """
    A = [list(map(int, r)) for r in rows]
    pr = 0
    for col in order:
        while True:
            live = [i for i in range(pr, len(A)) if A[i][col]]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(A[i][col]))
            A[pr], A[i0] = A[i0], A[pr]
            done = True
            for i in range(pr + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[pr][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[pr])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if pr < len(A) and A[pr][col]:
            if A[pr][col] < 0:
                A[pr] = [-a for a in A[pr]]
            for k in range(pr):
                q = A[k][col] // A[pr][col]
                if q:
                    A[k] = [a - q * b for a, b in zip(A[k], A[pr])]
            pr += 1
    return [r for r in A[:pr] if any(r)]


def _power(a: AlgebraicNumber, e: int) -> AlgExpr:
    base = AlgExpr.of_algebraic(a if e >= 0 else a.conj())
    return base ** abs(e)


def is_relation(lambdas: Sequence[AlgebraicNumber], beta: Sequence[int]) -> bool:
    """Exact test of prod lambda_j^beta_j = 1 (inverse taken as conjugate)."""
    prod = AlgExpr.const(1)
    for lam, e in zip(lambdas, beta):
        if e:
            prod = prod * _power(lam, e)
    return (prod - 1).is_zero()


def default_search_bound(lambdas: Sequence[AlgebraicNumber]) -> int:
    """Product of degrees times the largest height bitsize.

    Raised, when needed, to the largest order k of a root of unity whose
    degree phi(k) fits the largest input degree, so a lone root of unity
    always has its order inside the box.
    """
    deg = 1
    for lam in lambdas:
        deg *= lam.degree
    bits = max((lam.height.bit_length() for lam in lambdas), default=1)
    D = max((lam.degree for lam in lambdas), default=1)
    order = max(k for k in range(1, 2 * D * D + 3) if totient(k) <= D)
    return max(2, deg * bits, order)


@dataclass
class RelationBasis:
    m: int
    basis: list
    complete_within: int  # the box bound inside which the sweep was exhaustive (0: not exhaustive)

    def to_json(self) -> dict:
        return {"m": self.m, "basis": [list(b) for b in self.basis], "complete_within": self.complete_within}


def _check_inputs(lambdas) -> list[AlgebraicNumber]:
    out = []
    for lam in lambdas:
        if not isinstance(lam, AlgebraicNumber):
            lam = AlgebraicNumber.from_rational(Fraction(lam))
        if not is_modulus_one(lam):
            raise NotModulusOne(f"{lam!r} is not on the unit circle")
        out.append(lam)
    return out


def _angle_ints(lambdas, prec: int) -> list[tuple[int, int]]:
    """Integer enclosures [a, b] of 2^prec * arg(lambda)/2pi."""
    out = []
    for lam in lambdas:
        lo, hi = Angle(lam).enclose(prec + 4)
        a = (lo.numerator << prec) // lo.denominator
        b = -((-hi.numerator << prec) // hi.denominator)
        out.append((a, b))
    return out


def _maybe_relation(beta, enc, prec: int) -> bool:
    """False only when the angle sum provably misses every integer."""
    lo = sum(e * (a if e > 0 else b) for e, (a, b) in zip(beta, enc))
    hi = sum(e * (b if e > 0 else a) for e, (a, b) in zip(beta, enc))
    # is there an integer k with lo <= k 2^prec <= hi ?
    return (hi >> prec) >= -((-lo) >> prec)


def _sweep(m: int, bound: int):
    """Vectors in [-bound, bound]^m whose first nonzero entry is positive."""
    for beta in itertools.product(range(-bound, bound + 1), repeat=m):
        first = next((x for x in beta if x), 0)
        if first > 0:
            yield beta


def _pslq_candidates(lambdas, bound: int) -> list:
    """Integer relations among the angles and 1, proposed by PSLQ at 200 digits."""
    with mpmath.workdps(200):
        angles = []
        for lam in lambdas:
            lo, hi = Angle(lam).enclose(700)
            angles.append(mpmath.mpf(lo.numerator) / lo.denominator)
        try:
            rel = mpmath.pslq(angles + [mpmath.mpf(1)], maxcoeff=max(bound, 1), maxsteps=10 ** 4)
        except (ValueError, ZeroDivisionError):
            rel = None
    return [tuple(int(x) for x in rel[:-1])] if rel else []


def relation_lattice(lambdas: Sequence, search_bound: int | None = None) -> RelationBasis:
    """Basis of the relations found with coefficients in [-search_bound, search_bound]."""
    lams = _check_inputs(lambdas)
    m = len(lams)
    bound = default_search_bound(lams) if search_bound is None else int(search_bound)
    if bound < 1:
        raise ValueError("search bound must be at least 1")
    found = []
    prec = 64 + 2 * bound.bit_length()
    enc = _angle_ints(lams, prec)
    exhaustive = (2 * bound + 1) ** m <= _SWEEP_LIMIT
    if exhaustive:
        for beta in _sweep(m, bound):
            if _maybe_relation(beta, enc, prec) and is_relation(lams, beta):
                found.append(beta)
    for beta in _pslq_candidates(lams, bound):
        if any(beta) and is_relation(lams, beta):
            found.append(beta)
    basis = hnf_rows(found, list(range(m - 1, -1, -1))) if found else []
    for b in basis:
        if not is_relation(lams, b):  # pragma: no cover - integer combinations of relations
            raise AssertionError(f"basis vector {b} failed exact verification")
    return RelationBasis(m, [tuple(b) for b in basis], bound if exhaustive else 0)


@dataclass
class RelationNormalForm:
    m: int
    s: int
    indices: list  # independent inputs j_1 < ... < j_s (0-based)
    ell: int
    eps: list  # for every input j, the vector in Z^s with lambda_j^ell = prod lambda_{j_k}^eps_{j,k}
    L: int
    complete_within: int = 0
    dependent: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"s": self.s, "indices": list(self.indices), "ell": self.ell,
                "eps": [list(e) for e in self.eps], "L": self.L, "complete_within": self.complete_within}


def normal_form(basis: RelationBasis, lambdas: Sequence) -> RelationNormalForm:
    """Split inputs into an independent subset and powers of it, verified exactly."""
    lams = _check_inputs(lambdas)
    m = len(lams)
    rows = [list(b) for b in basis.basis]
    order = list(range(m - 1, -1, -1))
    ech = hnf_rows(rows, order) if rows else []
    pivots = []
    for r in ech:
        pivots.append(next(c for c in order if r[c]))
    indep = [j for j in range(m) if j not in pivots]
    s = len(indep)
    ells: dict = {}
    etas: dict = {}
    for j in pivots:
        others = [p for p in pivots if p != j]
        sub = hnf_rows(ech, others + [j] + indep)
        row = sub[len(others)]
        ells[j] = row[j]
        etas[j] = [-row[k] for k in indep]
    ell = lcm(*ells.values()) if ells else 1
    eps = []
    for j in range(m):
        if j in ells:
            eps.append([(ell // ells[j]) * x for x in etas[j]])
        else:
            eps.append([ell if k == j else 0 for k in indep])
    L = max([ell] + [sum(abs(x) for x in eps[j]) for j in pivots])
    nf = RelationNormalForm(m, s, indep, ell, eps, L, basis.complete_within, sorted(pivots))
    for j in range(m):
        lhs = _power(lams[j], ell)
        rhs = AlgExpr.const(1)
        for k, e in zip(indep, eps[j]):
            if e:
                rhs = rhs * _power(lams[k], e)
        if not (lhs - rhs).is_zero():  # pragma: no cover - the construction guarantees it
            raise AssertionError(f"normal form identity failed for input {j}")
    return nf


def lipschitz_L(nf: RelationNormalForm) -> int:
    """max(ell, sum_k |eps_{j,k}| over dependent j)."""
    return nf.L


def relations_from_normal_form(nf: RelationNormalForm) -> list[list[int]]:
    """The relations lambda_j^ell * prod lambda_{j_k}^-eps_{j,k} = 1 as integer vectors."""
    out = []
    for j in nf.dependent:
        v = [0] * nf.m
        v[j] += nf.ell
        for k, e in zip(nf.indices, nf.eps[j]):
            v[k] -= e
        out.append(v)
    return out


def in_lattice(basis: RelationBasis, v: Sequence[int]) -> bool:
    """Membership of v in the Z-span of the basis."""
    m = basis.m
    order = list(range(m - 1, -1, -1))
    ech = hnf_rows([list(b) for b in basis.basis], order)
    v = list(v)
    for r in ech:
        c = next(c for c in order if r[c])
        if v[c] % r[c]:
            return False
        q = v[c] // r[c]
        v = [a - q * b for a, b in zip(v, r)]
    return not any(v)

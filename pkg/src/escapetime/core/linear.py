"""Small dense linear-algebra kernels over exact fields (lists of lists)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = A[i]
        out.append([sum((row[t] * B[t][j] for t in range(m) if row[t]), Fraction(0)) for j in range(k)])
    return out


def kron(A, B) -> list[list]:
    n, m = len(A), len(B)
    return [[A[i // m][j // m] * B[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def companion(monic: Sequence) -> list[list]:
    """Companion matrix of a monic polynomial given lowest degree first."""
    d = len(monic) - 1
    C = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = Fraction(1)
    for i in range(d):
        C[i][d - 1] = -Fraction(monic[i])
    return C


def charpoly(M: Sequence[Sequence]) -> list[Fraction]:
    """det(xI - M), lowest degree first, via Hessenberg reduction."""
    n = len(M)
    H = [[Fraction(x) for x in row] for row in M]
    for m in range(1, n - 1):
        piv = next((r for r in range(m, n) if H[r][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        hm = H[m][m - 1]
        for r in range(m + 1, n):
            u = H[r][m - 1] / hm
            if u:
                Hr, Hm = H[r], H[m]
                for c in range(n):
                    if Hm[c]:
                        Hr[c] -= u * Hm[c]
                for row in H:
                    if row[r]:
                        row[m] += u * row[r]
    # recurrence on leading principal submatrices
    polys = [[Fraction(1)]]
    for k in range(n):
        # (x - h_kk) p_{k}
        prev = polys[-1]
        cur = [Fraction(0)] + prev
        for i, c in enumerate(prev):
            cur[i] -= H[k][k] * c
        prod = Fraction(1)
        for i in range(k - 1, -1, -1):
            prod *= H[i + 1][i]
            if prod == 0:
                break
            coef = H[i][k] * prod
            if coef:
                for j, c in enumerate(polys[i]):
                    cur[j] -= coef * c
        polys.append(cur)
    return polys[-1]


def rank_and_nullspace(M: Sequence[Sequence], zero_test=None) -> tuple[int, list[list]]:
    """Rank and a nullspace basis (column vectors) by Gauss-Jordan elimination."""
    if not M:
        return 0, []
    rows = [list(r) for r in M]
    n = len(rows[0])
    is_zero = zero_test or (lambda x: x == 0)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return len(pivots), basis

"""Certified root isolation for integer polynomials.

Real roots come from Sturm sequences and bisection.  Non-real roots are
located numerically with mpmath and then certified: a disk of radius
deg * |p(z)| / |p'(z)| around an approximation z contains a root, so once the
disks are disjoint, avoid the real axis and account for every root, each
contains exactly one.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath.libmp import to_rational

from ..errors import PrecisionCapExceeded
from .interval import Rect
from .poly import IntPolynomial, q_divmod
from .rational import sqrt_upper

PRECISION_CAP = 1 << 16


# ---------------------------------------------------------------------------
# Sturm machinery


def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = q_divmod(seq[-2].coeffs, seq[-1].coeffs)
        if not r:
            break
        r = IntPolynomial.from_rationals([-c for c in r])
        g = r.content()
        r = IntPolynomial(c // g for c in r.coeffs)
        seq.append(r)
    return seq


def sign_at(p: IntPolynomial, x: Fraction) -> int:
    """Sign of p(x) using integer arithmetic only."""
    a, b = x.numerator, x.denominator
    d = p.degree
    acc = 0
    bp = 1
    # sum c_i a^i b^(d-i), Horner in a with powers of b
    for c in reversed(p.coeffs):
        acc = acc * a + c * bp
        bp *= b
    v = acc
    return (v > 0) - (v < 0)


def _variations(seq, x: Fraction) -> int:
    v, last = 0, 0
    for q in seq:
        s = sign_at(q, x)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lc = abs(p.leading)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]) if p.degree > 0 else 0, lc)


def _pow2_above(q: Fraction) -> Fraction:
    k = 0
    while Fraction(2) ** k < q:
        k += 1
    return Fraction(2) ** k


def count_real_roots(p: IntPolynomial, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi]; whole line when bounds are None."""
    # a repeated root zeroes every Sturm polynomial, so count on the squarefree part
    seq = sturm_sequence(p.squarefree_part())
    if lo is None:
        R = _pow2_above(cauchy_bound(p))
        lo, hi = -R, R
    return _variations(seq, Fraction(lo)) - _variations(seq, Fraction(hi))


def isolate_real_intervals(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Closed isolating intervals of the distinct real roots of p, ascending.

    Linear factors and roots that land on a bisection point get degenerate
    intervals [r, r]; other roots lie in the open interior of their interval.
    """
    p = p.squarefree_part()
    if p.degree <= 0:
        return []
    if p.degree == 1:
        r = Fraction(-p.coeffs[0], p.coeffs[1])
        return [(r, r)]
    seq = sturm_sequence(p)
    R = _pow2_above(cauchy_bound(p))
    out = []
    stack = [(-R, R, _variations(seq, -R), _variations(seq, R))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = _variations(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort()
    closed = []
    for lo, hi in out:
        if sign_at(p, hi) == 0:
            closed.append((hi, hi))
            continue
        while sign_at(p, lo) == 0:
            mid = (lo + hi) / 2
            if sign_at(p, mid) == 0:
                lo = hi = mid
                break
            if sign_at(p, mid) == sign_at(p, hi):
                hi = mid
            else:
                lo = mid
        closed.append((lo, hi))
    return closed


def isolate_real_roots(p: IntPolynomial) -> list[Rect]:
    """Isolating intervals (as degenerate-imaginary rectangles) of the real roots, width <= 1."""
    sf = p.squarefree_part()
    return [Rect(*refine_real(sf, lo, hi, Fraction(1))) for lo, hi in isolate_real_intervals(sf)]


def refine_real(p: IntPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a closed isolating interval of a simple root of p to width <= width."""
    if lo == hi:
        return lo, hi
    s_hi = sign_at(p, hi)
    if s_hi == 0:
        return hi, hi
    if hi - lo <= width:
        return lo, hi
    # Newton at high precision, checked exactly by a sign change
    bits = max(53, -_log2_floor(width) + 16)
    if bits > 80:
        got = _newton_real(p, lo, hi, width, bits)
        if got is not None:
            return got
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _log2_floor(q: Fraction) -> int:
    q = Fraction(q)
    return q.numerator.bit_length() - q.denominator.bit_length()


def _newton_real(p, lo, hi, width, bits):
    with mpmath.workprec(bits + 20):
        coeffs = list(reversed(p.coeffs))
        x = mpmath.mpf(lo.numerator) / lo.denominator + (mpmath.mpf(hi.numerator) / hi.denominator - mpmath.mpf(lo.numerator) / lo.denominator) / 2
        try:
            x = mpmath.findroot(lambda t: mpmath.polyval(coeffs, t), x, tol=mpmath.mpf(2) ** (-2 * bits))
        except (ValueError, ZeroDivisionError):
            return None
        c = mpf_fraction(mpmath.re(x))
    half = width / 4
    a, b = c - half, c + half
    if a < lo or b > hi:
        return None
    sa, sb = sign_at(p, a), sign_at(p, b)
    if sa == 0:
        return a, a
    if sb == 0:
        return b, b
    if sa != sb:
        return a, b
    return None


def mpf_fraction(x) -> Fraction:
    num, den = to_rational(mpmath.mpf(x)._mpf_)
    return Fraction(int(num), int(den))


# ---------------------------------------------------------------------------
# complex roots


def _gauss_eval(coeffs, A: int, B: int, k: int):
    """2^(k*d) * p((A + iB) / 2^k) as a Gaussian integer (re, im)."""
    d = len(coeffs) - 1
    re, im = 0, 0
    scale = 1
    for c in reversed(coeffs):
        # acc = acc * Z + c * 2^(k*(d - i))
        re, im = re * A - im * B + c * scale, re * B + im * A
        scale <<= k
    return re, im


def _certify_disk(p: IntPolynomial, cre: Fraction, cim: Fraction, k: int) -> Fraction | None:
    """Radius upper bound for a disk around c (a 2^-k dyadic) containing a root."""
    A = cre * (1 << k)
    B = cim * (1 << k)
    A, B = int(A), int(B)
    pr, pi = _gauss_eval(p.coeffs, A, B, k)
    dp = p.derivative()
    dr, di = _gauss_eval(dp.coeffs, A, B, k)
    den = dr * dr + di * di
    if den == 0:
        return None
    num = pr * pr + pi * pi
    d = p.degree
    # |p(z)|^2 / |p'(z)|^2 = num / (den * 4^k)
    r2 = Fraction(d * d * num, den << (2 * k))
    return sqrt_upper(r2, 32)


def _round_dyadic(x, k: int) -> Fraction:
    return Fraction(int(mpmath.nint(x * mpmath.mpf(2) ** k)), 1 << k)


def _upper_half_boxes(p: IntPolynomial, n_upper: int) -> list[Rect]:
    if n_upper == 0:
        return []
    coeffs = list(reversed(p.coeffs))
    dps = 30
    while dps * 3.33 < PRECISION_CAP:
        try:
            with mpmath.workdps(dps):
                approx = mpmath.polyroots(coeffs, maxsteps=200 + 20 * p.degree, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            dps *= 2
            continue
        approx = sorted(approx, key=lambda z: -abs(mpmath.im(z)))
        cand = [z for z in approx[: 2 * n_upper] if mpmath.im(z) > 0]
        if len(cand) == n_upper:
            k = int(dps * 3.3)
            boxes = []
            ok = True
            for z in cand:
                with mpmath.workdps(dps):
                    cre, cim = _round_dyadic(mpmath.re(z), k), _round_dyadic(mpmath.im(z), k)
                r = _certify_disk(p, cre, cim, k)
                if r is None or cim - r <= 0:
                    ok = False
                    break
                boxes.append(Rect(cre - r, cre + r, cim - r, cim + r))
            if ok and all(not a.intersects(b) for i, a in enumerate(boxes) for b in boxes[i + 1 :]):
                return boxes
        dps *= 2
    raise PrecisionCapExceeded("could not certify complex root isolation")


@lru_cache(maxsize=4096)
def _canonical_roots(coeffs: tuple) -> tuple:
    p = IntPolynomial(coeffs)
    real = [Rect(lo, hi) for lo, hi in isolate_real_intervals(p)]
    n_up = (p.degree - len(real)) // 2
    upper = _upper_half_boxes(p, n_up)
    upper.sort(key=lambda r: (r.re_lo + r.re_hi, r.im_lo + r.im_hi))
    out = list(real)
    for b in upper:
        out.append(b)
        out.append(b.conj())
    return tuple(out)


def isolate_complex_roots(p: IntPolynomial) -> list[Rect]:
    """Isolating rectangles for all distinct complex roots of p.

    Real roots have zero-height rectangles on the axis; non-real roots come
    in mirrored pairs (upper half-plane root first).
    """
    sf = p.squarefree_part()
    if sf.degree <= 0:
        return []
    return list(_canonical_roots(sf.coeffs))


def refine_complex(p: IntPolynomial, box: Rect, width: Fraction) -> Rect:
    """Shrink an isolating rectangle of a simple root of squarefree p."""
    if box.is_real():
        lo, hi = refine_real(p, box.re_lo, box.re_hi, width)
        return Rect(lo, hi)
    if box.width <= width:
        return box
    conj = box.im_hi < 0
    if conj:
        box = box.conj()
    coeffs = list(reversed(p.coeffs))
    bits = max(64, 2 * (-_log2_floor(width)) + 32)
    while bits < 4 * PRECISION_CAP:
        with mpmath.workprec(bits):
            z0 = mpmath.mpc(
                mpmath.mpf((box.re_lo + box.re_hi).numerator) / (box.re_lo + box.re_hi).denominator / 2,
                mpmath.mpf((box.im_lo + box.im_hi).numerator) / (box.im_lo + box.im_hi).denominator / 2,
            )
            z = z0
            for _ in range(200):
                v = mpmath.polyval(coeffs, z, derivative=True)
                if v[1] == 0:
                    break
                step = v[0] / v[1]
                z -= step
                if abs(step) < mpmath.mpf(2) ** (-bits + 8):
                    break
            k = bits
            cre, cim = _round_dyadic(mpmath.re(z), k), _round_dyadic(mpmath.im(z), k)
        r = _certify_disk(p, cre, cim, k)
        if r is not None and 2 * r <= width:
            nb = Rect(cre - r, cre + r, cim - r, cim + r)
            if box.contains(nb):
                return nb.conj() if conj else nb
        bits *= 2
    raise PrecisionCapExceeded("complex root refinement did not converge")


def set_precision_cap(bits: int) -> int:
    """Change the refinement cap shared by every module; returns the old value."""
    global PRECISION_CAP
    if bits < 64:
        raise ValueError("the precision cap must be at least 64 bits")
    old, PRECISION_CAP = PRECISION_CAP, int(bits)
    return old

"""Exact maximization of polynomial objectives over integer ranges.

Polynomials are dense coefficient tuples of Fractions, lowest degree first.
All arithmetic is exact; maximization is branch-and-bound on subintervals with
Taylor-shift bounds, seeded by a coarse scan and explored best-bound-first.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import factorial

Poly = tuple[Fraction, ...]

POLY_ZERO: Poly = ()
POLY_X: Poly = (Fraction(0), Fraction(1))

# Segments at most this wide are scanned point by point.
_SMALL = 48
# Bail out rather than loop forever if pruning never takes hold.
_MAX_SEGMENTS = 200_000


def poly_const(c: int | Fraction) -> Poly:
    c = Fraction(c)
    return (c,) if c else ()


def _trim(coeffs: list[Fraction]) -> Poly:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def poly_scale(p: Poly, c: int | Fraction) -> Poly:
    c = Fraction(c)
    if not c:
        return ()
    return tuple(x * c for x in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def poly_eval(p: Poly, x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_int(p: Poly, x: int) -> int:
    v = poly_eval(p, x)
    assert v.denominator == 1, (p, x, v)
    return v.numerator


def binom_affine_poly(alpha: int, beta: int, d: int) -> Poly:
    """C(alpha*x + beta, d) as a polynomial in x, for alpha in {1, -1, 0}."""
    if d < 0:
        return ()
    prod: Poly = (Fraction(1),)
    for u in range(d):
        prod = poly_mul(prod, (Fraction(beta - u), Fraction(alpha)))
    return poly_scale(prod, Fraction(1, factorial(d)))


def poly_divexact_flip(num: Poly, root: int) -> Poly:
    """num(x) / (root - x) when the division is exact.

    Synthetic division by (x - root); raises ValueError on a nonzero
    remainder.
    """
    if not num:
        return ()
    d = len(num) - 1
    quot = [Fraction(0)] * d
    carry = num[d]
    for k in range(d - 1, -1, -1):
        quot[k] = carry
        carry = num[k] + root * carry
    if carry:
        raise ValueError(f"{root} - x does not divide the numerator exactly")
    return _trim([-c for c in quot])


def taylor_shift(p: Poly, a: int) -> Poly:
    """Coefficients of p(a + s) as a polynomial in s (repeated synthetic
    division by (x - a))."""
    work = list(p)
    out: list[Fraction] = []
    for _ in range(len(p)):
        acc = Fraction(0)
        for k in range(len(work) - 1, -1, -1):
            acc = work[k] + acc * a
            work[k] = acc
        out.append(work[0])
        work = work[1:]
    return tuple(out)


def poly_upper_bound(p: Poly, lo: int, hi: int) -> Fraction:
    """Upper bound of p on [lo, hi]: exact value at lo plus the positive part
    of the Taylor tail over the segment width."""
    assert lo <= hi
    shifted = taylor_shift(p, lo)
    if not shifted:
        return Fraction(0)
    w = hi - lo
    bound = shifted[0]
    for k in range(1, len(shifted)):
        c = shifted[k]
        if c > 0:
            bound += c * w**k
    return bound


def max_int_poly(p: Poly, lo: int, hi: int) -> tuple[Fraction, int]:
    """Exact maximum of p over integers in [lo, hi], with one witness
    argument (ties may resolve arbitrarily)."""
    assert lo <= hi
    width = hi - lo + 1
    # Seed the incumbent with a coarse scan so pruning bites wherever the
    # maximum sits; small ranges are finished outright.
    probes = (
        range(lo, hi + 1)
        if width <= 65
        else [lo + (width - 1) * k // 64 for k in range(65)]
    )
    best_val: Fraction | None = None
    best_arg = lo
    for x in probes:
        v = poly_eval(p, x)
        if best_val is None or v > best_val:
            best_val, best_arg = v, x
    assert best_val is not None
    if width <= 65:
        return best_val, best_arg
    heap = [(-poly_upper_bound(p, lo, hi), lo, hi)]
    seen = 0
    while heap:
        neg_bound, a, b = heapq.heappop(heap)
        if -neg_bound <= best_val:
            break
        seen += 1
        if seen > _MAX_SEGMENTS:
            raise RuntimeError("polynomial maximization did not converge")
        if b - a <= _SMALL:
            for x in range(a, b + 1):
                v = poly_eval(p, x)
                if v > best_val:
                    best_val, best_arg = v, x
            continue
        mid = (a + b) // 2
        for part_lo, part_hi in ((a, mid), (mid + 1, b)):
            bound = poly_upper_bound(p, part_lo, part_hi)
            if bound > best_val:
                heapq.heappush(heap, (-bound, part_lo, part_hi))
    return best_val, best_arg


def max_int_ratio(num: Poly, den_const: int, lo: int, hi: int) -> tuple[Fraction, int]:
    """Exact maximum of num(i)/(den_const - i) over integers in [lo, hi].

    Requires hi < den_const and that (den_const - i) divides num exactly,
    the one case this package produces, where every numerator summand
    carries a factor vanishing at i = den_const.
    """
    assert hi < den_const
    return max_int_poly(poly_divexact_flip(num, den_const), lo, hi)


def ceil_frac(v: Fraction) -> int:
    return -((-v.numerator) // v.denominator)

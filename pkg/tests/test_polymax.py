from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from qprofiles.polymax import (
    POLY_X,
    POLY_ZERO,
    binom_affine_poly,
    ceil_frac,
    max_int_poly,
    max_int_ratio,
    poly_add,
    poly_const,
    poly_divexact_flip,
    poly_eval,
    poly_eval_int,
    poly_mul,
    poly_scale,
    poly_upper_bound,
    taylor_shift,
)


def test_poly_arithmetic() -> None:
    p = poly_add(poly_const(1), poly_scale(POLY_X, 2))  # 1 + 2x
    q = poly_mul(p, p)  # 1 + 4x + 4x^2
    assert poly_eval_int(q, 3) == 49
    assert poly_eval(q, -1) == Fraction(1)
    assert poly_add(p, poly_scale(p, -1)) == POLY_ZERO
    assert poly_mul(p, POLY_ZERO) == POLY_ZERO
    assert poly_const(0) == POLY_ZERO


def test_poly_eval_int_rejects_fractions() -> None:
    half = poly_const(Fraction(1, 2))
    with pytest.raises(AssertionError):
        poly_eval_int(half, 1)


def test_binom_affine_poly_matches_comb() -> None:
    for alpha, beta, d in [(1, 0, 3), (1, 5, 4), (-1, 9, 2), (2, 1, 5), (1, -2, 3)]:
        p = binom_affine_poly(alpha, beta, d)
        for x in range(-3, 10):
            arg = alpha * x + beta
            expected = comb(arg, d) if arg >= 0 else _signed_comb(arg, d)
            assert poly_eval(p, x) == expected, (alpha, beta, d, x)


def _signed_comb(arg: int, d: int) -> Fraction:
    # Falling-factorial extension of C(arg, d) to negative arguments.
    num = Fraction(1)
    for u in range(d):
        num *= arg - u
    for u in range(1, d + 1):
        num /= u
    return num


def test_poly_divexact_flip() -> None:
    # num(x) = (root - x) * g(x) recovers g.
    root = 7
    g = (Fraction(2), Fraction(-1), Fraction(3))
    flip = (Fraction(root), Fraction(-1))  # root - x
    num = poly_mul(flip, g)
    assert poly_divexact_flip(num, root) == g
    with pytest.raises(ValueError):
        poly_divexact_flip(poly_const(1), root)


def test_taylor_shift() -> None:
    p = (Fraction(1), Fraction(2), Fraction(3))  # 1 + 2x + 3x^2
    shifted = taylor_shift(p, 5)
    for x in range(-4, 5):
        assert poly_eval(shifted, x) == poly_eval(p, x + 5)
    assert taylor_shift(p, 0) == p


def test_poly_upper_bound_dominates() -> None:
    rng = random.Random(11)
    for _ in range(100):
        degree = rng.randint(0, 5)
        p = tuple(Fraction(rng.randint(-9, 9)) for _ in range(degree + 1))
        lo = rng.randint(-20, 20)
        hi = lo + rng.randint(0, 30)
        bound = poly_upper_bound(p, lo, hi)
        assert all(poly_eval(p, x) <= bound for x in range(lo, hi + 1))


def test_max_int_poly_matches_scan() -> None:
    rng = random.Random(23)
    for _ in range(120):
        degree = rng.randint(0, 4)
        p = tuple(Fraction(rng.randint(-8, 8)) for _ in range(degree + 1))
        lo = rng.randint(-15, 15)
        hi = lo + rng.randint(0, 40)
        value, arg = max_int_poly(p, lo, hi)
        brute = max(poly_eval(p, x) for x in range(lo, hi + 1))
        assert value == brute
        assert lo <= arg <= hi and poly_eval(p, arg) == value


def test_max_int_poly_wide_interval() -> None:
    # Concave with interior vertex; the segment search must not scan 10^7
    # points.
    p = poly_add(
        poly_scale(poly_mul(POLY_X, POLY_X), -1), poly_scale(POLY_X, 10**7)
    )
    value, arg = max_int_poly(p, 0, 10**7)
    assert arg == 5 * 10**6
    assert value == Fraction(25 * 10**12)
    # Increasing cubic: maximum at the right edge.
    cubic = poly_mul(POLY_X, poly_mul(POLY_X, POLY_X))
    value, arg = max_int_poly(cubic, -(10**6), 2 * 10**7)
    assert arg == 2 * 10**7 and value == Fraction(8 * 10**21)


def test_max_int_poly_degenerate() -> None:
    assert max_int_poly(POLY_ZERO, 3, 3) == (Fraction(0), 3)
    assert max_int_poly(poly_const(-2), -5, 5) == (Fraction(-2), -5)
    with pytest.raises(AssertionError):
        max_int_poly(POLY_X, 5, 4)


def test_max_int_ratio_matches_scan() -> None:
    rng = random.Random(31)
    for _ in range(60):
        rho = rng.randint(2, 25)
        hi = rng.randint(0, rho - 1)
        # Build num = (rho - x) * g so the division is exact, as in use.
        g = tuple(Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, 4)))
        num = poly_mul((Fraction(rho), Fraction(-1)), g)
        value, arg = max_int_ratio(num, rho, 0, hi)
        brute = max(
            Fraction(poly_eval_int(num, i), rho - i) for i in range(0, hi + 1)
        )
        assert value == brute
        assert poly_eval(g, arg) == value


def test_ceil_frac() -> None:
    assert ceil_frac(Fraction(7, 2)) == 4
    assert ceil_frac(Fraction(-7, 2)) == -3
    assert ceil_frac(Fraction(6)) == 6
    assert ceil_frac(Fraction(0)) == 0

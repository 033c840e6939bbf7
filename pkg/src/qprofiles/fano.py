"""Expected-dimension numerics for r-planes on shape-constrained
complete intersections.

Everything here is exact integer or rational arithmetic: the expected
dimension delta, its corrected version delta_minus (the quadric-type
exception), the dualizing exponent gamma, the plane-covering threshold, and
the parameter-space dominance count.  None of it depends on q except gamma,
which evaluates numerical degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .primes import PrimePower
from .profiles import MultiProfile, interval_size


def _plane_restriction_dim(mp: MultiProfile, r: int) -> int:
    """sum over members of prod_j C(a_j + r, r): the number of conditions an
    r-plane must satisfy."""
    total = 0
    for p, c in mp.entries:
        prod = 1
        for a_j in p.coeffs:
            prod *= math.comb(a_j + r, r)
        total += c * prod
    return total


def delta(n: int, mp: MultiProfile, r: int) -> int:
    """(r+1)(n-r) minus the condition count; q never enters."""
    if not 0 <= r <= n:
        raise ValueError(f"need n >= r >= 0, got n={n}, r={r}")
    return (r + 1) * (n - r) - _plane_restriction_dim(mp, r)


def delta_minus(n: int, mp: MultiProfile, r: int) -> int:
    return min(delta(n, mp, r), n - 2 * r - mp.size)


def gamma(mp: MultiProfile, r: int, q: PrimePower) -> Fraction:
    """Dualizing exponent: (1/(r+1)) sum_a a(q) prod_j C(a_j + r, r)."""
    if r < 0:
        raise ValueError(f"need r >= 0, got {r}")
    total = 0
    for p, c in mp.entries:
        prod = 1
        for a_j in p.coeffs:
            prod *= math.comb(a_j + r, r)
        total += c * p(q.q) * prod
    return Fraction(total, r + 1)


@dataclass(frozen=True)
class FanoReport:
    n: int
    r: int
    delta: int
    delta_minus: int
    verdict: str
    gamma: Fraction | None = None
    gamma_integral: bool | None = None
    canonical_exponent: int | None = None


def fano_verdict(
    n: int, mp: MultiProfile, r: int, q: PrimePower | None = None
) -> FanoReport:
    """Sign trichotomy of delta_minus: negative means the plane scheme is
    empty for a general member, zero means nonempty of expected dimension,
    positive additionally connected.  gamma is included when q is given; a
    non-integral gamma is reported through the flag, never rounded."""
    d = delta(n, mp, r)
    dm = min(d, n - 2 * r - mp.size)
    if dm < 0:
        verdict = "empty-for-general"
    elif dm == 0:
        verdict = "nonempty-expected-dim"
    else:
        verdict = "nonempty-connected"
    if q is None:
        return FanoReport(n=n, r=r, delta=d, delta_minus=dm, verdict=verdict)
    g = gamma(mp, r, q)
    integral = g.denominator == 1
    exponent = int(g) - n - 1 if integral else None
    return FanoReport(
        n=n,
        r=r,
        delta=d,
        delta_minus=dm,
        verdict=verdict,
        gamma=g,
        gamma_integral=integral,
        canonical_exponent=exponent,
    )


def plane_cover_thresholds(mp: MultiProfile, r: int) -> tuple[int, Fraction]:
    """The two lower bounds on n in the plane-covering criterion."""
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    pointed_count = sum(c * (interval_size(p) - 1) for p, c in mp.entries)
    first = 2 * r - 1 + pointed_count
    second = r + Fraction(_plane_restriction_dim(mp, r) - mp.size, r)
    return first, second


def covered_by_planes(n: int, mp: MultiProfile, r: int) -> bool:
    """Whether every point of a general member lies on an r-plane inside it,
    by the exact rational threshold comparison."""
    first, second = plane_cover_thresholds(mp, r)
    return n >= first and n >= second


def dominance(n: int, mp: MultiProfile) -> bool:
    """The parameter space of shaped complete intersections dominates the
    moduli of all complete intersections iff the member count is at most n."""
    return mp.size <= n


def general_smooth_dim(n: int, mp: MultiProfile) -> int | None:
    """n - #members when every member is reduced (a(0) != 0) and the count
    fits; None otherwise (nonreduced shapes give nonsmooth generic members)."""
    if mp.size > n:
        return None
    if any(p.is_nonreduced for p, _ in mp.entries):
        return None
    return n - mp.size

"""Decision procedures for the three order relations on profiles.

* prec: the componentwise product order a_j <= b_j.
* contains: a(q) = b(q) and the monomial span of a's shape space lies in b's
  for every dimension.  Decided at the single dimension m* = a(1): any
  decomposable exponent vector sum_j q^j e_j has support of size at most
  a(1) = sum |e_j|, and decomposability is invariant under coordinate
  permutation and zero padding, so containment at m* settles every m.
* squig: some a' in Z>=0[t] has a <= a' componentwise and contains(a', b).

Because decomposability only depends on the multiset of nonzero entries of a
vector, the containment test enumerates decomposable *partitions* (weakly
decreasing value tuples) instead of raw vectors; this keeps constant
profiles of two-digit degree, whose vector sets are astronomically large,
cheap to compare.  The raw-vector route lives in the oracle module and the
two are checked against each other in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .primes import PrimePower
from .profiles import Profile, render_profile


@dataclass(frozen=True)
class OrderVerdict:
    relation: str
    holds: bool
    witness: object = None

    def to_json_obj(self) -> dict:
        witness: object
        if self.witness is None:
            witness = None
        elif isinstance(self.witness, Profile):
            witness = {"intermediate": render_profile(self.witness)}
        else:
            witness = self.witness
        return {"relation": self.relation, "holds": self.holds, "witness": witness}


def prec(a: Profile, b: Profile) -> OrderVerdict:
    """Componentwise order; failure witness is the least offending index."""
    if a.is_zero or b.is_zero:
        raise ValueError("prec compares nonzero polynomials")
    for j, c in enumerate(a.coeffs):
        other = b.coeffs[j] if j < len(b.coeffs) else 0
        if c > other:
            return OrderVerdict("prec", False, {"index": j})
    return OrderVerdict("prec", True)


@lru_cache(maxsize=None)
def decomposable_partitions(
    coeffs: tuple[int, ...], q: int, columns: int
) -> frozenset[tuple[int, ...]]:
    """All partitions (weakly decreasing positive tuples, at most `columns`
    parts) realizable as the nonzero values of some sum_j q^j e_j with
    |e_j| = coeffs[j].

    Enumerates column by column with weakly decreasing column values; the
    state is the vector of still-unassigned layer counts, so the memo stays
    polynomial in prod(coeffs[j] + 1) rather than in the vector-set size.
    """

    memo: dict[tuple, frozenset[tuple[int, ...]]] = {}
    powers = [q**j for j in range(len(coeffs))]

    def solve(rem: tuple[int, ...], bound: int, cols: int) -> frozenset[tuple[int, ...]]:
        total = sum(r * p for r, p in zip(rem, powers))
        bound = min(bound, total)
        cols = min(cols, sum(rem))
        if total == 0:
            return frozenset({()})
        if cols == 0 or bound == 0:
            return frozenset()
        state = (rem, bound, cols)
        cached = memo.get(state)
        if cached is not None:
            return cached
        found: set[tuple[int, ...]] = set()
        for column in itertools.product(*(range(r + 1) for r in rem)):
            value = sum(c * p for c, p in zip(column, powers))
            if value == 0 or value > bound:
                continue
            rest = tuple(r - c for r, c in zip(rem, column))
            for tail in solve(rest, value, cols - 1):
                found.add((value,) + tail)
        result = frozenset(found)
        memo[state] = result
        return result

    return solve(coeffs, sum(c * p for c, p in zip(coeffs, powers)), columns)


def _least_vector(partition: tuple[int, ...], length: int) -> tuple[int, ...]:
    # Lexicographically least arrangement: zeros first, then ascending parts.
    return (0,) * (length - len(partition)) + tuple(sorted(partition))


def contains(a: Profile, b: Profile, q: PrimePower) -> OrderVerdict:
    """a(q) = b(q) and every a-decomposable exponent vector is b-decomposable.

    `a` may be any nonzero element of Z>=0[t]; `b` must be a valid profile
    with respect to q (caller's precondition).  On failure the witness is
    either the degree mismatch or the lexicographically least a-decomposable,
    not b-decomposable exponent vector at dimension m* = a(1).
    """
    if a.is_zero or b.is_zero:
        raise ValueError("contains compares nonzero polynomials")
    deg_a, deg_b = a(q.q), b(q.q)
    if deg_a != deg_b:
        return OrderVerdict(
            "contain", False, {"degree_mismatch": {"a": deg_a, "b": deg_b}}
        )
    m_star = a.coeff_sum
    set_a = decomposable_partitions(a.coeffs, q.q, m_star)
    set_b = decomposable_partitions(b.coeffs, q.q, m_star)
    failing = set_a - set_b
    if not failing:
        return OrderVerdict("contain", True)
    witness = min(_least_vector(p, m_star) for p in failing)
    return OrderVerdict("contain", False, {"vector": list(witness)})


def _intermediates(a: Profile, target: int, q: int):
    """All a' >= a componentwise with a'(q) = target, in lexicographic
    coefficient order, lowest degree first."""
    top = 0
    power = 1
    while power * q <= target:
        power *= q
        top += 1
    base = a.coeffs + (0,) * (top + 1 - len(a.coeffs))
    if len(base) > top + 1:
        return  # deg_t a too large for the target degree

    def rec(j: int, remaining: int, prefix: tuple[int, ...]):
        if j == top + 1:
            if remaining == 0:
                yield prefix
            return
        power_j = q**j
        floor_rest = sum(base[k] * q**k for k in range(j + 1, top + 1))
        lo = base[j]
        hi = (remaining - floor_rest) // power_j
        for c in range(lo, hi + 1):
            yield from rec(j + 1, remaining - c * power_j, prefix + (c,))

    yield from rec(0, target, ())


def squig(a: Profile, b: Profile, q: PrimePower) -> OrderVerdict:
    """Whether some a' in Z>=0[t] satisfies a <= a' componentwise and
    contains(a', b); the witness is the first such a' in search order."""
    if a.is_zero or b.is_zero:
        raise ValueError("squig compares nonzero polynomials")
    target = b(q.q)
    if a(q.q) > target:
        return OrderVerdict("squig", False)
    for coeffs in _intermediates(a, target, q.q):
        candidate = Profile(coeffs)
        if contains(candidate, b, q).holds:
            return OrderVerdict("squig", True, candidate)
    return OrderVerdict("squig", False)

"""Brute-force reference implementations over explicit exponent vectors.

Multiplication sends each basis tensor (one monomial of degree a_j per layer
j) to the single monomial with exponent vector sum_j q^j e_j, so injectivity
of the multiplication map and containment of monomial spans are decided by
plain enumeration: no field arithmetic is ever required.  These routines are
deliberately naive; the library's fast decision procedures are validated
against them in the test suite.  Everything is capped: exceeding the cap
raises ResourceCapError rather than returning a verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import ResourceCapError
from .primes import PrimePower
from .profiles import Profile

DEFAULT_CAP = 10**7

ExponentVector = tuple[int, ...]


@dataclass(frozen=True)
class Decomposition:
    """Layers (e_0, ..., e_m) with |e_j| = a_j and sum q^j e_j = target."""

    layers: tuple[ExponentVector, ...]
    target: ExponentVector


def compositions_colex(total: int, parts: int) -> Iterator[ExponentVector]:
    """All tuples of `parts` nonnegative integers summing to `total`, in
    colexicographic order (sorted by reversed tuple)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for rest in compositions_colex(total - last, parts - 1):
            yield rest + (last,)


def _layer_lists(a: Profile, q: PrimePower, m: int, cap: int) -> list[list[ExponentVector]]:
    coeffs = a.coeffs if a.coeffs else (0,)
    expected = 1
    for c in coeffs:
        expected *= math.comb(c + m - 1, m - 1)
    if expected > cap:
        raise ResourceCapError("decomposition enumeration", expected, cap)
    layers = []
    power = 1
    for c in coeffs:
        layers.append(
            [tuple(power * x for x in comp) for comp in compositions_colex(c, m)]
        )
        power *= q.q
    return layers


def _sums(layers: list[list[ExponentVector]], m: int) -> Iterator[ExponentVector]:
    """All layer combinations, layer 0 varying slowest, summed pointwise."""
    def rec(j: int, acc: ExponentVector) -> Iterator[ExponentVector]:
        if j == len(layers):
            yield acc
            return
        for vec in layers[j]:
            yield from rec(j + 1, tuple(x + y for x, y in zip(acc, vec)))

    yield from rec(0, (0,) * m)


def decomposable_set(
    a: Profile, q: PrimePower, m: int, cap: int = DEFAULT_CAP
) -> dict[ExponentVector, int]:
    """Every e = sum_j q^j e_j with |e_j| = a_j, mapped to its number of
    distinct decompositions; insertion order follows the enumeration."""
    if m < 1:
        raise ValueError("need at least one variable")
    counts: dict[ExponentVector, int] = {}
    for vec in _sums(_layer_lists(a, q, m, cap), m):
        counts[vec] = counts.get(vec, 0) + 1
    return counts


def mult_injective_bruteforce(
    a: Profile, q: PrimePower, m: int, cap: int = DEFAULT_CAP
) -> bool:
    """True iff every decomposable vector has exactly one decomposition; the
    multiplication matrix has one nonzero entry per column, so this is
    injectivity."""
    if m < 1:
        raise ValueError("need at least one variable")
    seen: set[ExponentVector] = set()
    for vec in _sums(_layer_lists(a, q, m, cap), m):
        if vec in seen:
            return False
        seen.add(vec)
    return True


def span_subset(
    a: Profile, b: Profile, q: PrimePower, m: int, cap: int = DEFAULT_CAP
) -> tuple[bool, ExponentVector | None]:
    """Direct monomial-span comparison at dimension m; witness is the
    lexicographically least vector decomposable for a but not for b."""
    if a(q.q) != b(q.q):
        raise ValueError("span comparison requires equal numerical degrees")
    set_a = decomposable_set(a, q, m, cap)
    set_b = decomposable_set(b, q, m, cap)
    missing = [vec for vec in set_a if vec not in set_b]
    if not missing:
        return True, None
    return False, min(missing)


def sa_dimension(a: Profile, m: int) -> int:
    """dim of the shape space for dim V = m: prod_j C(a_j + m - 1, a_j)."""
    if m < 1:
        raise ValueError("need at least one variable")
    dim = 1
    for c in a.coeffs:
        dim *= math.comb(c + m - 1, c)
    return dim


def veronese_exponents(
    a: Profile, q: PrimePower, m: int, cap: int = DEFAULT_CAP
) -> list[tuple[tuple[ExponentVector, ...], ExponentVector]]:
    """Coordinate monomials of the associated Veronese map: for each basis
    tensor (a degree-a_j monomial per layer), the image exponent vector
    sum_j q^j e_j.  Layer tensors are listed with layer 0 slowest and each
    layer in colexicographic order."""
    if m < 1:
        raise ValueError("need at least one variable")
    coeffs = a.coeffs if a.coeffs else (0,)
    expected = 1
    for c in coeffs:
        expected *= math.comb(c + m - 1, m - 1)
    if expected > cap:
        raise ResourceCapError("veronese enumeration", expected, cap)
    per_layer = [list(compositions_colex(c, m)) for c in coeffs]
    out: list[tuple[tuple[ExponentVector, ...], ExponentVector]] = []

    def rec(j: int, tensors: tuple[ExponentVector, ...], acc: ExponentVector) -> None:
        if j == len(per_layer):
            out.append((tensors, acc))
            return
        power = q.q**j
        for e in per_layer[j]:
            rec(
                j + 1,
                tensors + (e,),
                tuple(x + power * y for x, y in zip(acc, e)),
            )

    rec(0, (), (0,) * m)
    return out


def fermat_membership(
    d: int, a: Profile, q: PrimePower, m: int, cap: int = DEFAULT_CAP
) -> bool:
    """Whether each x_i^d lies in the monomial span of the shape space.

    Each x_i^d decomposes as prod_j (x_i^{a_j})^{q^j} exactly when d = a(q),
    so membership is degree matching; the enumeration check and the degree
    test are asserted to agree.
    """
    if m < 1:
        raise ValueError("need at least one variable")
    vectors = decomposable_set(a, q, m, cap)
    by_enumeration = all(
        tuple(d if i == k else 0 for k in range(m)) in vectors for i in range(m)
    )
    by_degree = a(q.q) == d
    assert by_enumeration == by_degree, (d, a.coeffs, q.q, m)
    return by_degree


def bounds_reference(
    mp: "MultiProfile", rho: int | None = None, cap: int = DEFAULT_CAP
) -> tuple[int, int, int]:
    """(r, n1, n2) by direct transcription of the threshold recursions.

    Walks every cover edge explicitly (no closed-form run collapsing, no
    persistent cache) with a plain per-value memo, so it is usable only on
    small inputs; the production walker is validated against it.  When rho
    is None the returned n1/n2 are evaluated at the computed r.
    """
    from .poset import covers
    from .profiles import interval_size

    budget = [cap]

    def walk(kind: str, top: "MultiProfile", top_rho: int, memo: dict) -> int:
        start = (top, top_rho)
        stack: list[list] = []

        def open_frame(m: "MultiProfile", rh: int, edge: int) -> int | None:
            mkey = m.key() if kind == "r" else (m.key(), rh)
            if mkey in memo:
                return memo[mkey]
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceCapError("reference walk nodes", cap + 1, cap)
            if kind == "n2" and m.is_empty:
                node, pending = 0, []
            elif kind == "n2" and rh <= 0:
                node, pending = m.size, []
            else:
                if kind == "r":
                    node = (
                        sum(c * interval_size(p) for p, c in m.entries)
                        - 2 * m.size
                        - 1
                    )
                elif kind == "n1":
                    node = (
                        2 * rh
                        - 1
                        + sum(c * (interval_size(p) - 1) for p, c in m.entries)
                    )
                else:
                    total = 0
                    for p, c in m.entries:
                        prod = 1
                        for a_j in p.coeffs:
                            prod *= math.comb(a_j + rh, a_j)
                        total += c * prod
                    node = rh + -(-(total - m.size) // rh)
                pending = []
                for cov in covers(m):
                    shift = 1 if cov.flavour == "nlr" else 0
                    pending.append((cov.child, rh - shift, shift))
            stack.append([node, pending, edge, mkey])
            return None

        hit = open_frame(*start, 0)
        if hit is not None:
            return hit
        ret: tuple[int, int] | None = None
        while True:
            frame = stack[-1]
            if ret is not None:
                frame[0] = max(frame[0], ret[0] + ret[1])
                ret = None
            if frame[1]:
                child, child_rho, shift = frame[1].pop()
                hit = open_frame(child, child_rho, shift)
                if hit is not None:
                    ret = (hit, shift)
                continue
            stack.pop()
            memo[frame[3]] = frame[0]
            if not stack:
                return frame[0]
            ret = (frame[0], frame[2])

    r_value = walk("r", mp, 0, {})
    at = r_value if rho is None else rho
    return r_value, walk("n1", mp, at, {}), walk("n2", mp, at, {})

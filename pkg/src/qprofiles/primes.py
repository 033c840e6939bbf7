"""Prime powers q = p^e with deterministic validation.

The library indexes everything by a prime power q.  Values up to 2^64 are
accepted; primality is decided by a deterministic Miller-Rabin witness set,
so construction never depends on randomness.
"""

from __future__ import annotations

from dataclasses import dataclass

# Sufficient deterministic witnesses for every n < 3.3 * 10^24, which covers
# the supported range q <= 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_Q = 2**64


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n <= 2^64."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _integer_root(n: int, k: int) -> int:
    """Largest r with r^k <= n, for n >= 1, k >= 1."""
    if k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    # Float seeding can be off by a little; fix up exactly.
    while r > 1 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, p prime, e >= 1, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if q > MAX_Q:
        raise ValueError(f"q must be <= 2^64, got {q}")
    for e in range(q.bit_length() - 1, 0, -1):
        p = _integer_root(q, e)
        if p**e == q and is_prime(p):
            return p, e
    raise ValueError(f"{q} is not a prime power")


@dataclass(frozen=True)
class PrimePower:
    """q = p^e with p prime and e >= 1; q cached for arithmetic."""

    p: int
    e: int
    q: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"e must be >= 1, got {self.e}")
        if self.p**self.e != self.q:
            raise ValueError(f"q = {self.q} does not equal {self.p}^{self.e}")
        if self.q > MAX_Q:
            raise ValueError(f"q must be <= 2^64, got {self.q}")

    @classmethod
    def from_q(cls, q: int) -> PrimePower:
        p, e = prime_power_decompose(q)
        return cls(p, e, q)

    @classmethod
    def of(cls, p: int, e: int = 1) -> PrimePower:
        return cls(p, e, p**e)

    def __str__(self) -> str:
        return str(self.q)

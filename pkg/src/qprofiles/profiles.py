"""Profiles and multi-profiles: representation, parsing, validity.

A profile is a polynomial a(t) = a_0 + a_1 t + ... + a_m t^m with nonnegative
integer coefficients.  Given a prime power q, a profile prescribes the shape
of a form of numerical degree a(q): a sum of products prod_j f_j^(q^j) with
deg f_j = a_j.  The polynomial a is *valid* with respect to q when the map
b |-> b(q) is injective on the componentwise interval {b : 0 <= b <= a}; this
is exactly injectivity of the multiplication map from the shape space into
Sym^{a(q)} in every dimension.

A multi-profile is a finite multiset of nonzero profiles, stored as a count
map so that huge multiplicities stay compact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .primes import PrimePower


class ParseError(ValueError):
    """Syntax error in profile or multi-profile text, with a byte offset."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Profile:
    """Coefficient sequence (a_0, ..., a_m); index = power of t.

    The zero polynomial is the empty sequence.  It is permitted as an
    intermediate (interval enumeration quantifies over 0 <= b <= a) but is
    barred from multi-profile membership.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = tuple(self.coeffs)
        if any(c < 0 for c in cs):
            raise ValueError(f"negative coefficient in {cs}")
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def deg_t(self) -> int:
        if not self.coeffs:
            return 0
        return len(self.coeffs) - 1

    @property
    def coeff_sum(self) -> int:
        return sum(self.coeffs)

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __call__(self, x: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    @property
    def is_linear(self) -> bool:
        return self.coeffs == (1,)

    @property
    def is_nonreduced(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] == 0

    @property
    def is_nlr(self) -> bool:
        # Nonlinear and reduced: the remaining type besides a = 1 and a(0) = 0.
        return bool(self.coeffs) and self.coeffs[0] != 0 and self.coeffs != (1,)

    def add(self, other: Profile) -> Profile:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Profile(tuple(x + y for x, y in zip(a, b)))

    def sort_key(self) -> tuple:
        """Canonical total order: t-degree, then coefficients from the highest
        power down.  Multi-profile entries are listed in descending key order,
        which reproduces listings like (1+t, t, 1)."""
        return (self.deg_t, tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        return render_profile(self)


ZERO = Profile(())


def render_profile(a: Profile) -> str:
    """Minimal text form with ascending powers, e.g. "3+t^2"."""
    if a.is_zero:
        return "0"
    terms = []
    for j, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
            continue
        head = "" if c == 1 else str(c)
        power = "t" if j == 1 else f"t^{j}"
        terms.append(head + power)
    return "+".join(terms)


_TERM_RE = re.compile(r"(?:(\d+)\s*\*?\s*)?(t)(?:\^(\d+))?$|(\d+)$")


def parse_profile(text: str, base_offset: int = 0) -> Profile:
    """Parse a sum of terms `k`, `t`, `k*t`, `t^j`, `k*t^j`, `kt^j`.

    Whitespace is ignored; like terms are summed.  Raises ParseError with the
    byte offset of the offending character in the original text.
    """
    coeffs: dict[int, int] = {}
    pos = 0
    n = len(text)
    while True:
        end = text.find("+", pos)
        if end == -1:
            end = n
        term = text[pos:end]
        stripped = term.strip()
        at = base_offset + pos + (len(term) - len(term.lstrip()))
        if not stripped:
            raise ParseError("empty term", base_offset + pos)
        m = _TERM_RE.fullmatch(re.sub(r"\s+", "", stripped))
        if m is None:
            raise ParseError(f"cannot read term {stripped!r}", at)
        if m.group(4) is not None:
            k, j = int(m.group(4)), 0
        else:
            k = int(m.group(1)) if m.group(1) is not None else 1
            j = int(m.group(3)) if m.group(3) is not None else 1
        coeffs[j] = coeffs.get(j, 0) + k
        if end == n:
            break
        pos = end + 1
    top = max(coeffs) if coeffs else 0
    return Profile(tuple(coeffs.get(j, 0) for j in range(top + 1)))


def interval_below(a: Profile) -> Iterator[Profile]:
    """All b with 0 <= b <= a componentwise, in lexicographic coefficient
    order (a_0 varies slowest), 0 and a included; prod(a_j + 1) elements."""
    if a.is_zero:
        yield ZERO
        return
    bounds = a.coeffs
    current = [0] * len(bounds)
    while True:
        yield Profile(tuple(current))
        j = len(bounds) - 1
        while j >= 0 and current[j] == bounds[j]:
            current[j] = 0
            j -= 1
        if j < 0:
            return
        current[j] += 1


def interval_size(a: Profile) -> int:
    size = 1
    for c in a.coeffs:
        size *= c + 1
    return size


@dataclass(frozen=True)
class ProfileStats:
    numerical_degree: int
    coeff_sum: int
    deg_t: int
    constant_term: int
    is_linear: bool
    is_nonreduced: bool
    is_nlr: bool


def profile_stats(a: Profile, q: PrimePower) -> ProfileStats:
    if a.is_zero:
        raise ValueError("stats require a nonzero profile")
    return ProfileStats(
        numerical_degree=a(q.q),
        coeff_sum=a.coeff_sum,
        deg_t=a.deg_t,
        constant_term=a.constant_term,
        is_linear=a.is_linear,
        is_nonreduced=a.is_nonreduced,
        is_nlr=a.is_nlr,
    )


def is_profile(a: Profile, q: PrimePower) -> tuple[bool, tuple[Profile, Profile] | None]:
    """Decide whether b |-> b(q) is injective on {b : 0 <= b <= a}.

    Scans achievable values layer by layer, keeping at most two distinct
    representations per value, so the cost is O(a(q) * deg) rather than the
    prod(a_j + 1) size of the interval.  On failure returns the colliding
    pair realizing the smallest ambiguous value.
    """
    if a.is_zero:
        raise ValueError("validity requires a nonzero profile")
    reps: dict[int, list[tuple[int, ...]]] = {0: [()]}
    power = 1
    for c_max in a.coeffs:
        nxt: dict[int, list[tuple[int, ...]]] = {}
        for value, ways in reps.items():
            for c in range(c_max + 1):
                bucket = nxt.setdefault(value + c * power, [])
                if len(bucket) < 2:
                    for way in ways:
                        bucket.append(way + (c,))
                        if len(bucket) == 2:
                            break
        reps = nxt
        power *= q.q
    collisions = [v for v, ways in reps.items() if len(ways) >= 2]
    if not collisions:
        return True, None
    first, second = sorted(reps[min(collisions)])[:2]
    pair = sorted((Profile(first), Profile(second)), key=Profile.sort_key)
    return False, (pair[0], pair[1])


@dataclass(frozen=True)
class MultiProfile:
    """Finite multiset of nonzero profiles as (profile, count) pairs in
    canonical descending order."""

    entries: tuple[tuple[Profile, int], ...]

    def __post_init__(self) -> None:
        for p, c in self.entries:
            if p.is_zero:
                raise ValueError("zero polynomial cannot be a multi-profile member")
            if c < 1:
                raise ValueError(f"multiplicity must be >= 1, got {c}")
        keys = [p.sort_key() for p, _ in self.entries]
        if keys != sorted(keys, reverse=True) or len(set(keys)) != len(keys):
            raise ValueError("entries must be distinct and in canonical order")

    @classmethod
    def from_counts(cls, counts: dict[Profile, int]) -> MultiProfile:
        items = [(p, c) for p, c in counts.items() if c]
        items.sort(key=lambda pc: pc[0].sort_key(), reverse=True)
        return cls(tuple(items))

    @classmethod
    def from_iterable(cls, profiles: Iterable[Profile]) -> MultiProfile:
        counts: dict[Profile, int] = {}
        for p in profiles:
            counts[p] = counts.get(p, 0) + 1
        return cls.from_counts(counts)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def size(self) -> int:
        """Total multiplicity #a."""
        return sum(c for _, c in self.entries)

    @property
    def total_coeff_sum(self) -> int:
        return sum(p.coeff_sum * c for p, c in self.entries)

    def counts(self) -> dict[Profile, int]:
        return {p: c for p, c in self.entries}

    def profiles(self) -> Iterator[Profile]:
        """Entries expanded with multiplicity; only for desk-scale multisets."""
        for p, c in self.entries:
            for _ in range(c):
                yield p

    def key(self) -> str:
        """Canonical serialized form "[p1,p2,...]", repetition for
        multiplicity."""
        parts = []
        for p, c in self.entries:
            parts.extend([render_profile(p)] * c)
        return "[" + ",".join(parts) + "]"

    def display(self) -> str:
        """Human form: "(3, 2, 1)" expanded up to total multiplicity 4, then
        exponent form "(2^3, 1^8)"; the empty multiset prints as the empty-set
        sign."""
        if not self.entries:
            return "∅"
        if self.size <= 4:
            parts = []
            for p, c in self.entries:
                parts.extend([render_profile(p)] * c)
        else:
            parts = [
                render_profile(p) + (f"^{c}" if c > 1 else "")
                for p, c in self.entries
            ]
        return "(" + ", ".join(parts) + ")"

    def __str__(self) -> str:
        return self.display()


EMPTY = MultiProfile(())


def parse_multiprofile(text: str) -> MultiProfile:
    """Parse "[p1,p2,...]"; entries repeat for multiplicity; "[]" is empty."""
    lead = len(text) - len(text.lstrip())
    body = text.strip()
    if not body.startswith("["):
        raise ParseError("multi-profile must start with '['", lead)
    if not body.endswith("]"):
        raise ParseError("multi-profile must end with ']'", lead + len(body) - 1)
    inner = body[1:-1]
    if not inner.strip():
        return EMPTY
    profiles = []
    pos = 0
    inner_base = lead + 1
    while True:
        end = inner.find(",", pos)
        chunk = inner[pos:end] if end != -1 else inner[pos:]
        profile = parse_profile(chunk, base_offset=inner_base + pos)
        if profile.is_zero:
            raise ParseError("zero polynomial cannot be a multi-profile member", inner_base + pos)
        profiles.append(profile)
        if end == -1:
            break
        pos = end + 1
    return MultiProfile.from_iterable(profiles)

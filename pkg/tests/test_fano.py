from __future__ import annotations

from fractions import Fraction

import pytest

from qprofiles.fano import (
    covered_by_planes,
    delta,
    delta_minus,
    dominance,
    fano_verdict,
    gamma,
    general_smooth_dim,
    plane_cover_thresholds,
)
from qprofiles.primes import PrimePower
from qprofiles.profiles import EMPTY, parse_multiprofile

Q2 = PrimePower.from_q(2)
Q5 = PrimePower.from_q(5)


def test_delta_hand_values() -> None:
    # Lines on a cubic surface: 2*2 - C(4,1) = 0.
    assert delta(3, parse_multiprofile("[3]"), 1) == 0
    assert delta(3, parse_multiprofile("[1+t]"), 1) == 0
    assert delta(2, EMPTY, 1) == 2
    assert delta(4, parse_multiprofile("[1+t]"), 1) == 2
    with pytest.raises(ValueError):
        delta(1, EMPTY, 2)


def test_delta_minus_is_min_with_quadric_correction() -> None:
    mp = parse_multiprofile("[2]")
    for n in range(2, 8):
        assert delta_minus(n, mp, 1) == min(delta(n, mp, 1), n - 2 - 1)


def test_gamma_hand_value() -> None:
    # (1/2) * 3(5) * C(4,1) = 30 for the cubic at r=1, q=5.
    assert gamma(parse_multiprofile("[3]"), 1, Q5) == Fraction(6)
    assert gamma(EMPTY, 1, Q5) == 0
    with pytest.raises(ValueError):
        gamma(EMPTY, -1, Q5)


def test_gamma_integrality_grid() -> None:
    # a(q) * prod C(a_j+r, r) is divisible by r+1 on the whole small grid;
    # the integral flag exists as a rail and must mirror the denominator.
    assert gamma(parse_multiprofile("[2]"), 1, Q2) == Fraction(3)
    assert gamma(parse_multiprofile("[2]"), 2, Q2) == Fraction(2 * 6, 3) == 4
    from itertools import product

    from qprofiles.profiles import MultiProfile, Profile

    for r in (1, 2, 3):
        for coeffs in product(range(4), repeat=2):
            if not any(coeffs):
                continue
            mp = MultiProfile.from_counts({Profile(coeffs): 1})
            value = gamma(mp, r, Q2)
            assert value.denominator == 1
            report = fano_verdict(10, mp, r, Q2)
            assert report.gamma_integral == (value.denominator == 1)
            assert report.canonical_exponent == int(value) - 10 - 1


def test_fano_verdict_trichotomy() -> None:
    mp = parse_multiprofile("[3]")
    assert fano_verdict(3, mp, 1).verdict == "nonempty-expected-dim"
    assert fano_verdict(4, mp, 1).verdict == "nonempty-connected"
    assert fano_verdict(3, parse_multiprofile("[5]"), 1).verdict == "empty-for-general"


def test_fano_verdict_gamma_only_with_q() -> None:
    mp = parse_multiprofile("[3]")
    bare = fano_verdict(3, mp, 1)
    assert bare.gamma is None and bare.gamma_integral is None
    rich = fano_verdict(3, mp, 1, Q5)
    assert rich.gamma == Fraction(6)
    assert rich.gamma_integral is True
    assert rich.canonical_exponent == 6 - 3 - 1


def test_delta_is_q_independent() -> None:
    mp = parse_multiprofile("[2+t,3]")
    reports = [fano_verdict(8, mp, 1, q) for q in (Q2, Q5, PrimePower.from_q(27))]
    assert len({rep.delta for rep in reports}) == 1
    assert len({rep.delta_minus for rep in reports}) == 1


def test_plane_cover_thresholds() -> None:
    first, second = plane_cover_thresholds(parse_multiprofile("[3]"), 1)
    assert first == 2 * 1 - 1 + 3
    assert second == 1 + Fraction(4 - 1, 1)
    assert covered_by_planes(4, parse_multiprofile("[3]"), 1)
    assert not covered_by_planes(3, parse_multiprofile("[3]"), 1)
    with pytest.raises(ValueError):
        plane_cover_thresholds(EMPTY, 0)


def test_dominance_and_smooth_dim() -> None:
    mp = parse_multiprofile("[1+t,2]")
    assert dominance(2, mp) and not dominance(1, mp)
    assert general_smooth_dim(5, mp) == 3
    assert general_smooth_dim(1, mp) is None
    assert general_smooth_dim(5, parse_multiprofile("[2t]")) is None
    assert general_smooth_dim(4, EMPTY) == 4

from __future__ import annotations

import pytest

from qprofiles import oracle
from qprofiles.orderings import contains, decomposable_partitions, prec, squig
from qprofiles.primes import PrimePower
from qprofiles.profiles import Profile, parse_profile, render_profile

Q2 = PrimePower.from_q(2)
Q3 = PrimePower.from_q(3)


def test_prec_componentwise() -> None:
    assert prec(parse_profile("1+t"), parse_profile("2+t")).holds
    assert prec(parse_profile("1"), parse_profile("1")).holds
    verdict = prec(parse_profile("2+t"), parse_profile("1+t"))
    assert not verdict.holds
    assert verdict.witness == {"index": 0}
    verdict = prec(parse_profile("1+t^2"), parse_profile("3+t"))
    assert not verdict.holds
    assert verdict.witness == {"index": 2}
    with pytest.raises(ValueError):
        prec(Profile(()), parse_profile("1"))


def test_contains_reflexive_and_degree_mismatch() -> None:
    a = parse_profile("1+t")
    assert contains(a, a, Q2).holds
    verdict = contains(parse_profile("1"), parse_profile("2"), Q2)
    assert not verdict.holds
    assert verdict.witness == {"degree_mismatch": {"a": 1, "b": 2}}


def test_contains_base_q_expansion() -> None:
    # The base-q digit expansion of d spans a subset of every same-degree
    # span; 7 = 1 + 2 + 4 base 2.
    verdict = contains(parse_profile("1+t+t^2"), parse_profile("7"), Q2)
    assert verdict.holds


def test_contains_known_incomparable_pair() -> None:
    a, b = parse_profile("t^2+3"), parse_profile("3t+1")
    forward = contains(a, b, Q2)
    backward = contains(b, a, Q2)
    assert not forward.holds and not backward.holds
    assert "vector" in forward.witness and "vector" in backward.witness
    # The witnesses are genuinely decomposable on one side only.
    m = a.coeff_sum
    set_a = oracle.decomposable_set(a, Q2, m)
    set_b = oracle.decomposable_set(b, Q2, m)
    wf = tuple(forward.witness["vector"])
    wb = tuple(backward.witness["vector"])
    assert wf in set_a and wf not in set_b
    assert wb in set_b and wb not in set_a


def test_contains_agrees_with_span_oracle() -> None:
    profiles = [
        parse_profile(s)
        for s in ["4", "2+t", "2t", "1+t", "6", "2+2t", "t^2", "3t", "1+t+t^2"]
    ]
    for a in profiles:
        for b in profiles:
            if a(2) != b(2):
                continue
            m = a.coeff_sum
            expected, _ = oracle.span_subset(a, b, Q2, m)
            assert contains(a, b, Q2).holds == expected, (str(a), str(b))


def test_contains_witness_is_least_failing_vector() -> None:
    a, b = parse_profile("t^2+3"), parse_profile("3t+1")
    verdict = contains(a, b, Q2)
    m = a.coeff_sum
    set_a = oracle.decomposable_set(a, Q2, m)
    set_b = oracle.decomposable_set(b, Q2, m)
    # Least ascending arrangement over all failing vectors.
    failing = [tuple(sorted(v)) for v in set_a if v not in set_b]
    assert failing
    assert tuple(verdict.witness["vector"]) == min(failing)


def test_decomposable_partitions_matches_oracle() -> None:
    for text, q in [("4", Q2), ("2+t", Q2), ("1+t", Q3), ("2t", Q2)]:
        a = parse_profile(text)
        m = a.coeff_sum + 1
        parts = decomposable_partitions(a.coeffs, q.q, m)
        vectors = oracle.decomposable_set(a, q, m)
        assert parts == {
            tuple(sorted((x for x in v if x), reverse=True)) for v in vectors
        }


def test_squig_basic() -> None:
    # a ~> b via an intermediate a' >= a with a'(q) = b(q).
    verdict = squig(parse_profile("1"), parse_profile("2"), Q2)
    assert verdict.holds
    intermediate = verdict.witness
    assert isinstance(intermediate, Profile)
    assert intermediate(2) == 2
    # prec(a, a') holds by construction.
    assert prec(parse_profile("1"), intermediate).holds


def test_squig_respects_degree_direction() -> None:
    assert not squig(parse_profile("4"), parse_profile("2"), Q2).holds


def test_squig_witness_is_first_in_search_order() -> None:
    # Candidates a' >= t with a'(2) = 6 in coefficient-lexicographic order
    # start at (0, 1, 1); it is contained in the constant profile, so it is
    # the frozen witness.
    verdict = squig(parse_profile("t"), parse_profile("6"), Q2)
    assert verdict.holds
    assert render_profile(verdict.witness) == "t+t^2"


def test_squig_reflexive_on_profiles() -> None:
    for text in ["1", "2", "1+t", "t^2+3"]:
        a = parse_profile(text)
        assert squig(a, a, Q2).holds

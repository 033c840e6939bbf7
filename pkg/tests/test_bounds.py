from __future__ import annotations

import logging
import random

import pytest

from qprofiles.bounds import (
    CLASSICAL_N0_REFERENCE,
    BoundsRecord,
    n0,
    n0_auto,
    n1,
    n2,
    r0,
    r_bound,
)
from qprofiles.cache import BoundsCache
from qprofiles.errors import ResourceCapError
from qprofiles.oracle import bounds_reference
from qprofiles.profiles import (
    EMPTY,
    MultiProfile,
    Profile,
    parse_multiprofile,
)


def test_r0_hand_values() -> None:
    assert r0(parse_multiprofile("[3]")) == 4 - 2 - 1
    assert r0(parse_multiprofile("[1+t]")) == 4 - 2 - 1
    assert r0(parse_multiprofile("[2,1+t]")) == 3 + 4 - 4 - 1
    assert r0(EMPTY) == -1


def test_r_bound_published_rows() -> None:
    expected = {3: 1, 4: 2, 5: 3, 6: 6, 7: 17, 8: 120, 9: 6479}
    for d, r in expected.items():
        assert r_bound(parse_multiprofile(f"[{d}]")) == r, d
    assert r_bound(parse_multiprofile("[1+t]")) == 1
    assert r_bound(parse_multiprofile("[2,1+t]")) == 2
    assert r_bound(parse_multiprofile("[1+t,1+t]")) == 3
    assert r_bound(parse_multiprofile("[1+t+t^2]")) == 5
    assert r_bound(EMPTY) == -1


def test_published_n_values() -> None:
    rows = {
        "[3]": (4, 4),
        "[4]": (7, 9),
        "[5]": (10, 22),
        "[6]": (22, 160),
        "[7]": (125, 20376),
        "[1+t]": (4, 4),
        "[2,1+t]": (8, 9),
        "[1+t,1+t]": (11, 13),
        "[1+t+t^2]": (17, 48),
    }
    for text, (n1_expected, n2_expected) in rows.items():
        record = n0_auto(parse_multiprofile(text))
        assert record.n1 == n1_expected, text
        assert record.n2 == n2_expected, text
        assert record.n0 == max(n1_expected, n2_expected)
        assert record.key == parse_multiprofile(text).key()


def test_explicit_budget() -> None:
    mp = parse_multiprofile("[4]")
    record = n0(mp, 1)
    assert (record.r, record.n1, record.n2, record.n0) == (1, 5, 5, 5)
    assert n1(mp, 1) == 5
    assert n2(mp, 1) == 5


def test_empty_conventions() -> None:
    record = n0_auto(EMPTY)
    assert (record.r0, record.r, record.n1, record.n2, record.n0) == (
        -1,
        -1,
        -3,
        0,
        0,
    )
    assert n2(EMPTY, 5) == 0
    assert n1(EMPTY, 5) == 9


def test_leaf_convention_variant() -> None:
    # The alternative n2 leaf (0 instead of #a) changes no published value.
    for text in ["[3]", "[4]", "[5]", "[1+t]", "[1+t,1+t]"]:
        mp = parse_multiprofile(text)
        assert n0_auto(mp, n2_leaf="zero").n0 == n0_auto(mp).n0, text
    with pytest.raises(ValueError):
        n0_auto(parse_multiprofile("[3]"), n2_leaf="negative")


def test_agrees_with_reference_walker() -> None:
    fixed = [
        "[3]",
        "[4]",
        "[5]",
        "[6]",
        "[1+t]",
        "[2,1+t]",
        "[1+t,1+t]",
        "[1+t+t^2]",
        "[1+2t]",
        "[2+2t]",
        "[2t^2]",
        "[t^2]",
        "[3,2]",
        "[1+t,2]",
        "[t,t,1]",
        "[2t,1,1]",
    ]
    for text in fixed:
        mp = parse_multiprofile(text)
        record = n0_auto(mp, node_cap=5_000_000)
        assert (record.r, record.n1, record.n2) == bounds_reference(mp), text


def test_agrees_with_reference_on_random_tame_inputs() -> None:
    # Universe restricted to small constants and degree <= 1 shapes; large
    # mixed-degree inputs have genuinely enormous cover DAGs and are the
    # node cap's territory, not a test target.
    rng = random.Random(20260814)
    for _ in range(30):
        if rng.random() < 0.5:
            ks = rng.sample(range(1, 5), k=rng.randint(1, 3))
            mp = MultiProfile.from_counts(
                {Profile((k,)): rng.randint(1, 3) for k in ks}
            )
        else:
            members: dict[Profile, int] = {}
            budget = rng.randint(1, 5)
            while budget > 0:
                a0 = rng.randint(0, min(2, budget))
                a1 = rng.randint(0 if a0 else 1, min(2, budget - a0))
                if a0 + a1 == 0:
                    continue
                p = Profile((a0, a1) if a1 else (a0,))
                members[p] = members.get(p, 0) + 1
                budget -= a0 + a1
            mp = MultiProfile.from_counts(members)
        record = n0_auto(mp, node_cap=5_000_000)
        assert (record.r, record.n1, record.n2) == bounds_reference(mp), mp.key()


def test_run_skip_matches_explicit_walk() -> None:
    for d in range(3, 9):
        mp = parse_multiprofile(f"[{d}]")
        fast = n0_auto(mp, skip_runs=True)
        slow = n0_auto(mp, skip_runs=False, node_cap=50_000_000)
        assert (fast.r, fast.n1, fast.n2) == (slow.r, slow.n1, slow.n2), d


def test_run_skip_matches_explicit_on_random_constant_states() -> None:
    rng = random.Random(99)
    for _ in range(12):
        top = rng.randint(2, 4)
        counts = {k: rng.randint(0, 30) for k in range(1, top)}
        counts[top] = rng.randint(65, 120) if top <= 3 else rng.randint(3, 12)
        mp = MultiProfile.from_counts(
            {Profile((k,)): m for k, m in counts.items() if m}
        )
        fast = n0_auto(mp, skip_runs=True, node_cap=50_000_000)
        slow = n0_auto(mp, skip_runs=False, node_cap=50_000_000)
        assert (fast.r, fast.n1, fast.n2) == (slow.r, slow.n1, slow.n2), counts


def test_lin_and_pow_step_identities() -> None:
    # A lin cover drops linear members without shifting the budget; a pow
    # cover divides by t.  Spot-check against first principles.
    record = n0_auto(parse_multiprofile("[1,1,1]"))
    # r: covers [1,1,1] -> [] with no shift, so r = r0 = 3*2 - 6 - 1 = -1.
    assert record.r == r0(parse_multiprofile("[1,1,1]")) == -1
    # [t] -> pow -> [1] -> lin -> []; no budget shifts anywhere.
    assert r_bound(parse_multiprofile("[t]")) == max(
        r0(parse_multiprofile("[t]")),
        r0(parse_multiprofile("[1]")),
        r0(EMPTY),
    )


def test_node_cap() -> None:
    with pytest.raises(ResourceCapError) as err:
        n0_auto(parse_multiprofile("[8]"), skip_runs=False, node_cap=100)
    assert err.value.cap == 100


def test_trace_emits_lines() -> None:
    lines: list[str] = []
    n0_auto(parse_multiprofile("[4]"), trace=lines.append)
    assert any(line.startswith("r (4)") for line in lines)
    assert any("n1" in line for line in lines)
    assert any("n2" in line for line in lines)
    # Nested nodes are indented.
    assert any(line.startswith("  ") for line in lines)


def test_trace_reports_runs() -> None:
    lines: list[str] = []
    n0_auto(parse_multiprofile("[7]"), trace=lines.append, run_threshold=8)
    assert any("run top=" in line for line in lines)


def test_cache_round_trip(tmp_path) -> None:
    path = tmp_path / "bounds.jsonl"
    cold_cache = BoundsCache(path)
    cold = n0_auto(parse_multiprofile("[6]"), cache=cold_cache)
    assert cold_cache.writes >= 2
    warm_cache = BoundsCache(path)
    warm = n0_auto(parse_multiprofile("[6]"), cache=warm_cache)
    assert warm == cold
    assert warm_cache.writes == 0
    assert warm_cache.hits >= 2


def test_cache_warm_start_at_interior_nodes(tmp_path) -> None:
    # Results stored for a child multi-profile are picked up mid-walk.
    path = tmp_path / "bounds.jsonl"
    shared = BoundsCache(path)
    n0_auto(parse_multiprofile("[2,1]"), cache=shared)
    before = shared.hits
    record = n0_auto(parse_multiprofile("[4]"), cache=shared)
    assert record.n0 == 9
    assert shared.hits > before


def test_bounds_record_shape() -> None:
    record = n0_auto(parse_multiprofile("[5]"))
    assert isinstance(record, BoundsRecord)
    assert record == BoundsRecord(
        key="[5]", r0=record.r0, r=3, n1=10, n2=22, n0=22
    )


def test_n1_exceeds_n2_warning_only_on_exceptional_shape(caplog) -> None:
    # (2, t, t) style shapes are the one family where n1 > n2 is expected;
    # the recursion must stay silent there and warn anywhere else.
    with caplog.at_level(logging.WARNING, logger="qprofiles.bounds"):
        n0_auto(parse_multiprofile("[2,t]"))
    assert not caplog.records


def test_classical_reference_table_is_display_only() -> None:
    assert CLASSICAL_N0_REFERENCE[3] == "3"
    assert CLASSICAL_N0_REFERENCE[6] == "454205040715033146"
    assert all(isinstance(v, str) for v in CLASSICAL_N0_REFERENCE.values())

"""The multi-profile poset: type decomposition, covers, intervals, and the
well-foundedness invariant.

A multi-profile splits by type into linear members (a = 1), nonreduced
members (a(0) = 0), and the nonlinear reduced rest.  Each nonempty
multi-profile covers elements of exactly one flavour:

* pow  -- every member nonreduced: divide every member by t;
* lin  -- some linear members, the rest nonreduced: drop the linear members;
* nlr  -- some nonlinear reduced member: for each distinct such a0 of
  maximal coefficient sum, pass to the pointed-line multi-profile minus one
  copy each of a0 and a0 - 1 (constant term lowered by one).

The 4-component invariant phi strictly lex-decreases along every cover edge,
so every descending chain reaches the empty multi-profile.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceCapError
from .profiles import (
    EMPTY,
    MultiProfile,
    Profile,
    interval_below,
    render_profile,
)

DEFAULT_NODE_CAP = 50_000


@dataclass(frozen=True)
class TypeDecomposition:
    lin: MultiProfile
    pow: MultiProfile
    nlr: MultiProfile


def type_decomposition(mp: MultiProfile) -> TypeDecomposition:
    lin: dict[Profile, int] = {}
    pow_: dict[Profile, int] = {}
    nlr: dict[Profile, int] = {}
    for p, c in mp.entries:
        if p.is_linear:
            lin[p] = c
        elif p.is_nonreduced:
            pow_[p] = c
        else:
            nlr[p] = c
    return TypeDecomposition(
        MultiProfile.from_counts(lin),
        MultiProfile.from_counts(pow_),
        MultiProfile.from_counts(nlr),
    )


@dataclass(frozen=True)
class PhiInvariant:
    """Lexicographically compared 4-tuple proving well-foundedness.

    delta: max t-degree over the members; sigma: max coefficient sum over the
    nonlinear reduced members (0 if none); mu: how many of those attain sigma,
    counted with multiplicity; total: total multiplicity.  The fourth
    component must be the total count, not the nonlinear-reduced count: along
    a lin cover such as (t,1,1) -> (t) the first three components tie and
    only the total drops.
    """

    delta: int
    sigma: int
    mu: int
    total: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.delta, self.sigma, self.mu, self.total)


def phi(mp: MultiProfile) -> PhiInvariant:
    delta = 0
    sigma = 0
    mu = 0
    for p, c in mp.entries:
        delta = max(delta, p.deg_t)
        if p.is_nlr:
            s = p.coeff_sum
            if s > sigma:
                sigma, mu = s, c
            elif s == sigma:
                mu += c
    return PhiInvariant(delta, sigma, mu, mp.size)


def pointed_line_multiprofile(mp: MultiProfile) -> MultiProfile:
    """One copy of every nonzero b <= a for each occurrence of each member a;
    the equation shapes cutting out pointed lines."""
    counts: dict[Profile, int] = {}
    for p, c in mp.entries:
        for b in interval_below(p):
            if not b.is_zero:
                counts[b] = counts.get(b, 0) + c
    return MultiProfile.from_counts(counts)


@dataclass(frozen=True)
class Cover:
    child: MultiProfile
    flavour: str
    a0: Profile | None = None


def covers(mp: MultiProfile) -> list[Cover]:
    """The covered elements, in deterministic order (nlr choices by
    descending canonical order of a0)."""
    if mp.is_empty:
        return []
    nlr = [(p, c) for p, c in mp.entries if p.is_nlr]
    if nlr:
        max_sum = max(p.coeff_sum for p, _ in nlr)
        pointed = pointed_line_multiprofile(mp).counts()
        out = []
        for a0, _ in nlr:
            if a0.coeff_sum != max_sum:
                continue
            lowered = Profile((a0.coeffs[0] - 1,) + a0.coeffs[1:])
            child = dict(pointed)
            for removed in (a0, lowered):
                if child.get(removed, 0) < 1:
                    raise AssertionError(
                        f"cover removal of {render_profile(removed)} from the "
                        f"pointed-line multiset of {mp.key()} is impossible"
                    )
                child[removed] -= 1
            out.append(Cover(MultiProfile.from_counts(child), "nlr", a0))
        return out
    linear = [(p, c) for p, c in mp.entries if p.is_linear]
    if linear:
        rest = {p: c for p, c in mp.entries if not p.is_linear}
        return [Cover(MultiProfile.from_counts(rest), "lin")]
    shifted = {Profile(p.coeffs[1:]): c for p, c in mp.entries}
    return [Cover(MultiProfile.from_counts(shifted), "pow")]


@dataclass(frozen=True)
class HasseEdge:
    parent: str
    child: str
    flavour: str
    a0: str | None


@dataclass(frozen=True)
class HasseGraph:
    """Interval below a top element: nodes in breadth-first discovery order
    (top first), edges in emission order; both deterministic."""

    top: str
    nodes: tuple[MultiProfile, ...]
    edges: tuple[HasseEdge, ...]

    def node_keys(self) -> list[str]:
        return [node.key() for node in self.nodes]

    def is_chain(self) -> bool:
        if len(self.nodes) <= 1:
            return True
        out_degree: dict[str, int] = {}
        for edge in self.edges:
            out_degree[edge.parent] = out_degree.get(edge.parent, 0) + 1
        return all(count == 1 for count in out_degree.values()) and len(
            self.edges
        ) == len(self.nodes) - 1

    def to_text(self) -> str:
        if self.is_chain():
            return " - ".join(node.display() for node in self.nodes)
        by_key = {node.key(): node for node in self.nodes}
        lines = [
            f"{by_key[e.parent].display()} - {by_key[e.child].display()}  [{e.flavour}]"
            for e in self.edges
        ]
        return "\n".join(lines)

    def to_json_obj(self) -> dict:
        return {
            "top": self.top,
            "nodes": self.node_keys(),
            "edges": [
                {
                    "child": e.child,
                    "parent": e.parent,
                    "flavour": e.flavour,
                    "a0": e.a0,
                }
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        def quote(text: str) -> str:
            return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'

        lines = ["digraph interval {"]
        for node in self.nodes:
            lines.append(f"  {quote(node.key())} [label={quote(node.display())}];")
        for e in self.edges:
            lines.append(
                f"  {quote(e.parent)} -> {quote(e.child)} [label={quote(e.flavour)}];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def interval(mp: MultiProfile, max_nodes: int = DEFAULT_NODE_CAP) -> HasseGraph:
    """Breadth-first closure of covers from mp down to the empty
    multi-profile; raises ResourceCapError beyond max_nodes nodes."""
    top_key = mp.key()
    seen: dict[str, MultiProfile] = {top_key: mp}
    order = [mp]
    edges: list[HasseEdge] = []
    queue = [mp]
    while queue:
        node = queue.pop(0)
        node_key = node.key()
        for cover in covers(node):
            child_key = cover.child.key()
            edges.append(
                HasseEdge(
                    parent=node_key,
                    child=child_key,
                    flavour=cover.flavour,
                    a0=render_profile(cover.a0) if cover.a0 is not None else None,
                )
            )
            if child_key not in seen:
                if len(seen) >= max_nodes:
                    raise ResourceCapError("interval nodes", len(seen) + 1, max_nodes)
                seen[child_key] = cover.child
                order.append(cover.child)
                queue.append(cover.child)
    return HasseGraph(top=top_key, nodes=tuple(order), edges=tuple(edges))

"""Contractions and link addition that removes unmatched nodes.

A contraction is a node set ``C`` with fewer neighbors than members. Every
unmatched V- node anchors one: the V- nodes reachable from it along
alternating paths. All members of such a set can be left unmatched by some
maximum matching, so joining two of them always lets the matching grow.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, TextIO

from .graph import Graph, count_triplets
from .matching import FREE, MatchResult, maximum_matching

log = logging.getLogger(__name__)


class StaleMatchError(RuntimeError):
    """The MatchResult was computed on a different graph state."""


class InfeasibleError(ValueError):
    def __init__(self, msg: str, bound: int):
        super().__init__(msg)
        self.bound = bound


class Recompute(str, Enum):
    ONCE = "once"
    PER_LINK = "per_link"


@dataclass(frozen=True)
class Contraction:
    members: frozenset[int]
    neighborhood: frozenset[int]
    anchor: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class AugmentationPlan:
    requested: int
    added_edges: list[tuple[int, int]] = field(default_factory=list)
    deficiency_before: int = 0
    deficiency_after: int = 0
    clustering_before: float = 0.0
    clustering_after: float = 0.0
    mode: Recompute = Recompute.PER_LINK

    @property
    def shortfall(self) -> int:
        return self.requested - len(self.added_edges)

    @property
    def complete(self) -> bool:
        return self.shortfall == 0

    def summary(self) -> dict:
        return {
            "requested": self.requested,
            "added": len(self.added_edges),
            "shortfall": self.shortfall,
            "mode": self.mode.value,
            "deficiency_before": self.deficiency_before,
            "deficiency_after": self.deficiency_after,
            "clustering_before": self.clustering_before,
            "clustering_after": self.clustering_after,
        }


def _reachable(g: Graph, mr: MatchResult, anchor: int,
               cap: int | None = None) -> Contraction | None:
    """Alternating-path closure of ``anchor``; None once it exceeds ``cap`` members."""
    members = {anchor}
    nbhd: set[int] = set()
    q = deque([anchor])
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if u in nbhd:
                continue
            nbhd.add(u)
            w = mr.mate_plus[u]
            # a free u+ here would be an augmenting path: mr is not maximum
            assert w != FREE, "matching is not maximum"
            if w not in members:
                members.add(w)
                if cap is not None and len(members) > cap:
                    return None
                q.append(w)
    return Contraction(frozenset(members), frozenset(nbhd), anchor)


def find_contractions(g: Graph, mr: MatchResult) -> list[Contraction]:
    """One contraction per unmatched V- node, in ascending anchor order."""
    if not mr.is_current(g):
        raise StaleMatchError("match result does not belong to the current graph state")
    return [_reachable(g, mr, r) for r in mr.unmatched_minus]


def max_addable_links(contractions: Iterable[Contraction]) -> int:
    return sum(c.size // 2 for c in contractions)


def successive_pair(c: Contraction, g: Graph) -> tuple[int, int] | None:
    """Smallest non-adjacent pair ``u < v`` in ``c`` sharing a neighbor."""
    members = c.members
    for u in sorted(members):
        nu = g.neighbors(u)
        best = None
        for w in nu:
            for v in g.neighbors(w):
                if v > u and v in members and v not in nu and (best is None or v < best):
                    best = v
        if best is not None:
            return u, best
    return None


def _transitivity(g: Graph) -> float:
    tc = count_triplets(g)
    return tc.closed_triplets / tc.connected_triplets if tc.connected_triplets else 0.0


def _sorted_contractions(cs: list[Contraction]) -> list[Contraction]:
    return sorted(cs, key=lambda c: (c.size, c.anchor))


def _first_eligible_pair(g: Graph, mr: MatchResult) -> tuple[int, int] | None:
    """Pair from the smallest (then lowest-anchor) contraction that has one.

    Same choice as scanning the fully sorted contraction list, but sets are
    grown under a doubling size cap so large contractions are rarely built.
    """
    anchors = list(mr.unmatched_minus)
    cap = 2
    while anchors:
        small, pending = [], []
        for r in anchors:
            c = _reachable(g, mr, r, cap)
            (pending if c is None else small).append((r, c))
        for _, c in sorted(small, key=lambda rc: (rc[1].size, rc[0])):
            pair = successive_pair(c, g)
            if pair is not None:
                return pair
        anchors = [r for r, _ in pending]
        cap *= 2
    return None


def _add_closing_edge(g: Graph, u: int, v: int) -> None:
    assert g.neighbors(u) & g.neighbors(v), f"({u}, {v}) closes no triplet"
    added = g.add_edge(u, v)
    assert added


def reduce_unmatched(g: Graph, T: int, recompute: Recompute | str = Recompute.PER_LINK,
                     mr: MatchResult | None = None) -> AugmentationPlan:
    """Add up to ``T`` triangle-closing links inside contractions; mutates ``g``.

    Contractions are visited smallest first. In ``per_link`` mode matching
    and contractions are recomputed after every insertion, and each link
    removes at least one unmatched node. ``once`` computes contractions up
    front and cycles through them.

    If fewer than ``T`` eligible pairs exist the plan comes back short;
    check ``plan.shortfall``.
    """
    recompute = Recompute(recompute)
    if mr is None or not mr.is_current(g):
        mr = maximum_matching(g)
    contractions = _sorted_contractions(find_contractions(g, mr))
    bound = max_addable_links(contractions)
    if T < 0 or T > bound:
        raise InfeasibleError(
            f"T={T} out of range: at most sum(|C_i|/2) = {bound} links can be added", bound)

    plan = AugmentationPlan(requested=T, mode=recompute,
                            deficiency_before=mr.deficiency)
    plan.clustering_before = _transitivity(g)

    if recompute is Recompute.PER_LINK:
        for _ in range(T):
            pair = _first_eligible_pair(g, mr)
            if pair is None:
                break
            _add_closing_edge(g, *pair)
            plan.added_edges.append(pair)
            before = mr.deficiency
            mr = maximum_matching(g, warm_start=mr)
            assert mr.deficiency <= before - 1, "link did not remove an unmatched node"
    else:
        k = 0
        idle = 0
        while len(plan.added_edges) < T and contractions and idle < len(contractions):
            c = contractions[k % len(contractions)]
            k += 1
            pair = successive_pair(c, g)
            if pair is None:
                idle += 1
                continue
            idle = 0
            _add_closing_edge(g, *pair)
            plan.added_edges.append(pair)
        mr = maximum_matching(g, warm_start=mr)

    if plan.shortfall:
        log.warning("only %d of %d links could be placed", len(plan.added_edges), T)
    plan.deficiency_after = mr.deficiency
    plan.clustering_after = _transitivity(g)
    return plan


def write_plan(plan: AugmentationPlan, out: TextIO,
               id_map: dict[int, int] | None = None) -> None:
    """One ``u v`` line per added link, then ``#`` trailer lines.

    With ``id_map`` (original id -> dense id) the original ids are written,
    so the file replays onto the source edge list.
    """
    back = {d: o for o, d in id_map.items()} if id_map else None
    out.write(f"# augmentation plan: {len(plan.added_edges)} links, mode {plan.mode.value}\n")
    for u, v in plan.added_edges:
        if back is not None:
            u, v = back[u], back[v]
        out.write(f"{u}\t{v}\n")
    for key, val in plan.summary().items():
        out.write(f"# {key}: {val}\n")

"""Maximum matching on the bipartite double of an undirected graph.

The bipartite representation is implicit: V+ node ``i`` links to V- node
``j`` iff ``{i, j}`` is an edge. Unmatched nodes are the driver/observer
nodes; their count (the deficiency) is unique even though the matching and
the unmatched sets are not.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph

FREE = -1
BRUTEFORCE_MAX_NODES = 22


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]  # (begin in V+, end in V-), sorted

    @property
    def size(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class MatchResult:
    matching: Matching
    mate_plus: tuple[int, ...]   # V+ node -> matched V- node or FREE
    mate_minus: tuple[int, ...]  # V- node -> matched V+ node or FREE
    unmatched_plus: tuple[int, ...]
    unmatched_minus: tuple[int, ...]
    graph_version: int
    graph_id: int

    @property
    def deficiency(self) -> int:
        return len(self.mate_plus) - self.matching.size

    def is_current(self, g: Graph) -> bool:
        return self.graph_id == id(g) and self.graph_version == g.version


def _hopcroft_karp(adj: list[list[int]], mate_p: list[int], mate_m: list[int]) -> None:
    """Grow ``mate_p``/``mate_m`` in place to a maximum matching."""
    n = len(adj)
    inf = n + 1
    dist = [0] * n
    while True:
        # BFS layering from free V+ nodes
        q = deque()
        for u in range(n):
            if mate_p[u] == FREE:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = inf
        found = inf
        while q:
            u = q.popleft()
            if dist[u] >= found:
                continue
            for v in adj[u]:
                w = mate_m[v]
                if w == FREE:
                    if found == inf:
                        found = dist[u] + 1
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if found == inf:
            return
        # iterative DFS along the layers, free V+ roots in ascending order
        ptr = [0] * n
        for root in range(n):
            if mate_p[root] != FREE:
                continue
            stack = [root]
            path_v: list[int] = []
            while stack:
                u = stack[-1]
                advanced = False
                nbrs = adj[u]
                while ptr[u] < len(nbrs):
                    v = nbrs[ptr[u]]
                    ptr[u] += 1
                    w = mate_m[v]
                    if w == FREE:
                        if dist[u] + 1 == found:
                            path_v.append(v)
                            for uu, vv in zip(stack, path_v):
                                mate_p[uu] = vv
                                mate_m[vv] = uu
                            stack = []
                            advanced = True
                            break
                    elif dist[w] == dist[u] + 1:
                        path_v.append(v)
                        stack.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    stack.pop()
                    if path_v:
                        path_v.pop()


def maximum_matching(g: Graph, warm_start: MatchResult | None = None) -> MatchResult:
    """Hopcroft-Karp maximum matching of the bipartite double of ``g``.

    Without ``warm_start`` a greedy pass in ascending node order seeds the
    search, which makes the returned matching deterministic. A warm start
    may come from an earlier version of the same graph with edges only
    added since; its pairs are still valid and only augmentation remains.
    """
    n = g.node_count
    adj = [g.sorted_neighbors(i) for i in range(n)]
    if warm_start is not None and len(warm_start.mate_plus) == n:
        mate_p = list(warm_start.mate_plus)
        mate_m = list(warm_start.mate_minus)
    else:
        mate_p = [FREE] * n
        mate_m = [FREE] * n
        for u in range(n):
            for v in adj[u]:
                if mate_m[v] == FREE:
                    mate_p[u] = v
                    mate_m[v] = u
                    break
    _hopcroft_karp(adj, mate_p, mate_m)
    pairs = tuple((u, v) for u, v in enumerate(mate_p) if v != FREE)
    return MatchResult(
        matching=Matching(pairs),
        mate_plus=tuple(mate_p),
        mate_minus=tuple(mate_m),
        unmatched_plus=tuple(u for u in range(n) if mate_p[u] == FREE),
        unmatched_minus=tuple(v for v in range(n) if mate_m[v] == FREE),
        graph_version=g.version,
        graph_id=id(g),
    )


def deficiency(g: Graph) -> int:
    return maximum_matching(g).deficiency


def hall_ore_deficiency_bruteforce(g: Graph) -> int:
    """max over X ⊆ V+ of ``|X| - |Λ(X)|`` by enumerating all 2^n subsets.

    Test oracle only; refuses graphs above 22 nodes.
    """
    n = g.node_count
    if n > BRUTEFORCE_MAX_NODES:
        raise ValueError(f"brute-force oracle limited to {BRUTEFORCE_MAX_NODES} nodes, got {n}")
    if n == 0:
        return 0
    nbr_mask = [sum(1 << j for j in g.neighbors(i)) for i in range(n)]
    # union[mask] built by doubling: subsets containing bit i extend those without it
    union = np.zeros(1 << n, dtype=np.int64)
    size = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        half = 1 << i
        union[half:2 * half] = union[:half] | nbr_mask[i]
        size[half:2 * half] = size[:half] + 1
    return int(np.max(size - np.bitwise_count(union)))


def verify_matching(g: Graph, m: Matching) -> bool:
    begins: set[int] = set()
    ends: set[int] = set()
    for u, v in m.pairs:
        if not (0 <= u < g.node_count and 0 <= v < g.node_count):
            return False
        if not g.has_edge(u, v):
            return False
        if u in begins or v in ends:
            return False
        begins.add(u)
        ends.add(v)
    return True

"""Simple undirected graphs, triplet counts and clustering coefficients."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised on invalid graph mutations (self-loops, out-of-range ids)."""


class DegenerateClusteringWarning(UserWarning):
    """Clustering requested on a graph with no connected triplets."""


class Graph:
    """Simple undirected graph on nodes ``0..n-1`` stored as adjacency sets.

    ``version`` increments on every successful mutation so that derived
    results (matchings, contractions) can detect that they went stale.
    """

    __slots__ = ("_adj", "_edge_count", "version")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 0:
            raise GraphError(f"node_count must be nonnegative, got {node_count}")
        self._adj: list[set[int]] = [set() for _ in range(node_count)]
        self._edge_count = 0
        self.version = 0
        for i, j in edges:
            self.add_edge(i, j)

    @property
    def node_count(self) -> int:
        return len(self._adj)

    n = node_count

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def add_edge(self, i: int, j: int) -> bool:
        """Insert edge ``{i, j}``; return False if it was already present."""
        n = len(self._adj)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i}, {j}) out of range for {n} nodes")
        if i == j:
            raise GraphError(f"self-loop on node {i} is not allowed")
        if j in self._adj[i]:
            return False
        self._adj[i].add(j)
        self._adj[j].add(i)
        self._edge_count += 1
        self.version += 1
        return True

    def add_node(self) -> int:
        self._adj.append(set())
        self.version += 1
        return len(self._adj) - 1

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def neighbors(self, i: int) -> set[int]:
        """The live neighbor set of ``i``; do not mutate."""
        return self._adj[i]

    def sorted_neighbors(self, i: int) -> list[int]:
        return sorted(self._adj[i])

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def average_degree(self) -> float:
        if not self._adj:
            return 0.0
        return 2.0 * self._edge_count / len(self._adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if u < v:
                    yield u, v

    def copy(self) -> Graph:
        g = Graph(0)
        g._adj = [set(a) for a in self._adj]
        g._edge_count = self._edge_count
        return g

    def check_invariants(self) -> None:
        """Full scan for symmetry, self-loops and the edge count identity."""
        total = 0
        for i, nbrs in enumerate(self._adj):
            if i in nbrs:
                raise AssertionError(f"self-loop at {i}")
            for j in nbrs:
                if i not in self._adj[j]:
                    raise AssertionError(f"asymmetric edge ({i}, {j})")
            total += len(nbrs)
        if total != 2 * self._edge_count:
            raise AssertionError("edge_count out of sync with adjacency")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class BipartiteRep:
    """Implicit bipartite double of a graph.

    V+ node ``i`` links to V- node ``j`` for every edge ``{i, j}``, so each
    undirected edge contributes two links. Nothing is copied.
    """

    source: Graph

    def out_links(self, i: int) -> list[int]:
        return self.source.sorted_neighbors(i)

    def links(self) -> Iterator[tuple[int, int]]:
        for i in range(self.source.node_count):
            for j in self.source.sorted_neighbors(i):
                yield i, j

    def __len__(self) -> int:
        return 2 * self.source.edge_count


@dataclass(frozen=True)
class TripletCounts:
    closed_triplets: int
    open_triplets: int

    @property
    def connected_triplets(self) -> int:
        return self.closed_triplets + self.open_triplets

    @property
    def triangles(self) -> int:
        return self.closed_triplets // 3


def count_triangles(g: Graph) -> int:
    # orient each edge towards the higher (degree, id) endpoint; each triangle
    # is then seen exactly once from its lowest-ranked vertex
    rank = sorted(range(g.node_count), key=lambda v: (g.degree(v), v))
    pos = [0] * g.node_count
    for r, v in enumerate(rank):
        pos[v] = r
    out = [{w for w in g.neighbors(v) if pos[w] > pos[v]} for v in range(g.node_count)]
    tri = 0
    for v in range(g.node_count):
        ov = out[v]
        for w in ov:
            tri += len(ov & out[w])
    return tri


def count_triplets(g: Graph) -> TripletCounts:
    wedges = sum(d * (d - 1) // 2 for d in g.degrees())
    closed = 3 * count_triangles(g)
    return TripletCounts(closed_triplets=closed, open_triplets=wedges - closed)


def global_clustering(g: Graph) -> float:
    """Transitivity: closed triplets over all connected triplets.

    Returns 0.0 (with a DegenerateClusteringWarning) when the graph has no
    connected triplet at all.
    """
    tc = count_triplets(g)
    if tc.connected_triplets == 0:
        warnings.warn("graph has no connected triplets; clustering set to 0",
                      DegenerateClusteringWarning, stacklevel=2)
        return 0.0
    return tc.closed_triplets / tc.connected_triplets


def theoretical_clustering_ba(n: int, L: int, log_base: float = math.e) -> float:
    """Degree-independent BA clustering estimate ``(L-1)/8 * log(n)^2 / n``."""
    if n < 2 or L < 1:
        raise ValueError("need n >= 2 and L >= 1")
    lg = math.log(n, log_base)
    return (L - 1) / 8.0 * lg * lg / n


def theoretical_clustering_hk(n: int, L: int, L2: int, d: int,
                              log_base: float = math.e) -> float:
    """HK clustering estimate at node degree ``d``: ``4*L2/d`` plus the BA term."""
    if d < 1 or L2 < 0:
        raise ValueError("need d >= 1 and L2 >= 0")
    return 4.0 * L2 / d + theoretical_clustering_ba(n, L, log_base)


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    g = path_graph(n)
    if n >= 3:
        g.add_edge(n - 1, 0)
    return g


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int) -> Graph:
    """Center ``0`` joined to leaves ``1..leaves``."""
    return Graph(leaves + 1, ((0, k) for k in range(1, leaves + 1)))

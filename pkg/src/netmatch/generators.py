"""Barabási-Albert and Holme-Kim scale-free generators.

Both grow a seed graph one node at a time. Attachment probabilities are
proportional to the degrees at the start of each iteration; targets within
one iteration are drawn without replacement so the result stays simple.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import Graph, complete_graph, cycle_graph, path_graph

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


class Model(str, Enum):
    BA = "ba"
    HK = "hk"


class SeedKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"


class TriadRule(str, Enum):
    UNIFORM = "uniform"  # original Holme-Kim triad formation
    DEGREE = "degree"    # neighbor weighted by its degree


@dataclass(frozen=True)
class GeneratorParams:
    model: Model = Model.BA
    n: int = 25
    m: int = 5
    seed_graph: SeedKind = SeedKind.PATH
    L: int = 2
    L1: int = 1
    L2: int = 1
    rng_seed: int = 0
    triad: TriadRule = TriadRule.UNIFORM

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "seed_graph", SeedKind(self.seed_graph))
        object.__setattr__(self, "triad", TriadRule(self.triad))

    @property
    def links_per_node(self) -> int:
        """Edges contributed by every grown node (``L`` or ``L1 + L1*L2``)."""
        if self.model is Model.BA:
            return self.L
        return self.L1 + self.L1 * self.L2

    def validate(self) -> None:
        if self.m < 2:
            raise ConfigError(f"seed graph needs m >= 2, got m={self.m}")
        if self.m > self.n:
            raise ConfigError(f"seed size m={self.m} exceeds n={self.n}")
        if self.model is Model.BA:
            if self.L < 1:
                raise ConfigError(f"L must be >= 1, got {self.L}")
        else:
            if self.L1 < 1:
                raise ConfigError(f"L1 must be >= 1, got {self.L1}")
            if self.L2 < 0:
                raise ConfigError(f"L2 must be >= 0, got {self.L2}")
        if self.links_per_node > self.m:
            raise ConfigError(
                f"{self.links_per_node} links per new node cannot be placed on a "
                f"seed graph of {self.m} nodes")
        if not 0 <= self.rng_seed < 2**64:
            raise ConfigError("rng_seed must fit in 64 unsigned bits")


def make_seed_graph(kind: SeedKind | str, m: int) -> Graph:
    if m < 2:
        raise ConfigError(f"seed graph needs m >= 2, got {m}")
    kind = SeedKind(kind)
    if kind is SeedKind.PATH:
        return path_graph(m)
    if kind is SeedKind.CYCLE:
        if m < 3:
            raise ConfigError("a cycle seed needs m >= 3")
        return cycle_graph(m)
    return complete_graph(m)


class _Attacher:
    """Degree-proportional sampler over the nodes present at iteration start."""

    def __init__(self, g: Graph, rng: np.random.Generator):
        self.rng = rng
        self.cum = np.cumsum(np.asarray(g.degrees(), dtype=np.int64))

    def draw(self, exclude: set[int]) -> int | None:
        total = int(self.cum[-1])
        if len(exclude) >= len(self.cum) or total == 0:
            return None
        while True:
            u = self.rng.integers(total)
            b = int(np.searchsorted(self.cum, u, side="right"))
            if b not in exclude:
                return b


def _weighted_choice(rng: np.random.Generator, nodes: list[int], weights: list[int]) -> int:
    cum = np.cumsum(weights)
    return nodes[int(np.searchsorted(cum, rng.integers(cum[-1]), side="right"))]


def generate_ba(params: GeneratorParams) -> Graph:
    if params.model is not Model.BA:
        raise ConfigError("generate_ba needs model=BA")
    params.validate()
    rng = np.random.default_rng(params.rng_seed)
    g = make_seed_graph(params.seed_graph, params.m)
    for _ in range(params.m, params.n):
        attach = _Attacher(g, rng)
        a = g.add_node()
        chosen: set[int] = set()
        for _ in range(params.L):
            b = attach.draw(chosen)
            chosen.add(b)
            g.add_edge(a, b)
    return g


def generate_hk(params: GeneratorParams) -> Graph:
    """Holme-Kim growth: preferential attachment plus triad formation.

    After each preferential link ``a-b`` the new node makes ``L2`` further
    links to neighbors of ``b``, picked uniformly by default or in proportion
    to their degree with ``triad=DEGREE``. When ``b`` has no neighbor left to
    link to, the triad step falls back to one extra preferential draw, so
    every grown node still adds ``L1 + L1*L2`` edges.

    Degree-weighted triads pile new nodes onto pairs of adjacent hubs; those
    nodes share their whole neighborhood and raise the number of unmatched
    nodes instead of lowering it.
    """
    if params.model is not Model.HK:
        raise ConfigError("generate_hk needs model=HK")
    params.validate()
    rng = np.random.default_rng(params.rng_seed)
    g = make_seed_graph(params.seed_graph, params.m)
    for _ in range(params.m, params.n):
        attach = _Attacher(g, rng)
        a = g.add_node()
        linked: set[int] = set()
        for _ in range(params.L1):
            b = attach.draw(linked)
            linked.add(b)
            g.add_edge(a, b)
            for _ in range(params.L2):
                cand = [c for c in g.sorted_neighbors(b) if c != a and c not in linked]
                if cand and params.triad is TriadRule.UNIFORM:
                    c = cand[int(rng.integers(len(cand)))]
                elif cand:
                    c = _weighted_choice(rng, cand, [g.degree(c) for c in cand])
                else:
                    log.debug("triad step for node %d exhausted neighbors of %d; "
                              "falling back to preferential attachment", a, b)
                    c = attach.draw(linked)
                linked.add(c)
                g.add_edge(a, c)
    return g


def generate(params: GeneratorParams) -> Graph:
    if params.model is Model.BA:
        return generate_ba(params)
    return generate_hk(params)

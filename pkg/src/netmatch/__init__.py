"""Unmatched nodes, clustering and link addition in undirected networks."""

from .generators import GeneratorParams, Model, generate, generate_ba, generate_hk, make_seed_graph
from .graph import Graph, count_triplets, global_clustering
from .matching import MatchResult, hall_ore_deficiency_bruteforce, maximum_matching, verify_matching
from .structural import find_contractions, max_addable_links, reduce_unmatched, successive_pair

__all__ = [
    "Graph", "count_triplets", "global_clustering",
    "GeneratorParams", "Model", "generate", "generate_ba", "generate_hk", "make_seed_graph",
    "MatchResult", "maximum_matching", "hall_ore_deficiency_bruteforce", "verify_matching",
    "find_contractions", "max_addable_links", "reduce_unmatched", "successive_pair",
]
__version__ = "0.1.0"

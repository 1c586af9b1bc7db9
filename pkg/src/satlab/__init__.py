"""satlab: saturated-subgraph constructions and measurements on seeded G(n,p)."""

from .embed import Family, Pattern, clique, complete_multipartite, cycle, path, star
from .gnp import DeferredGnp, gen_gnp
from .graphs import Graph, common_neighbors, read_edge_list, write_edge_list
from .saturation import exact_sat, greedy_saturate, is_saturated, patch_up

__all__ = [
    "DeferredGnp",
    "Family",
    "Graph",
    "Pattern",
    "clique",
    "common_neighbors",
    "complete_multipartite",
    "cycle",
    "exact_sat",
    "gen_gnp",
    "greedy_saturate",
    "is_saturated",
    "patch_up",
    "path",
    "read_edge_list",
    "star",
    "write_edge_list",
]

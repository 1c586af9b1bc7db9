"""Greedy maximal forbidden-free spanning subgraph with a density probe.

Substitutes an externally-sourced construction: freeness is guaranteed by
the greedy gate, while the density property is only probed empirically
and reported (a low score is a warning, never a failure).
"""

from __future__ import annotations

import random

from ..embed import DensityReport, Family, Pattern, copy_through, density_probe
from ..graphs import Graph, MutableGraph


def build_dense_free(
    ga: Graph,
    forbidden: Family,
    target: Pattern | None,
    seed: int,
    probe_eps: float = 0.3,
    probe_trials: int = 100,
) -> tuple[Graph, DensityReport | None]:
    """Seeded random-order greedy maximal forbidden-free subgraph of ga.

    Returns the subgraph and, when a target is given and fits, the
    empirical density probe report.
    """
    edges = list(ga.edges())
    random.Random(seed).shuffle(edges)
    h = MutableGraph(ga.n)
    for u, v in edges:
        h.add_edge(u, v)
        if copy_through(h, u, v, forbidden):
            h.remove_edge(u, v)
    out = h.freeze()
    probe = None
    if target is not None and 0 < target.n <= max(1, int(probe_eps * ga.n)):
        probe = density_probe(out, target, probe_eps, probe_trials, seed)
    return out, probe

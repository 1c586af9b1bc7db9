"""Naive reference implementations used as test oracles.

Everything here stays independent of the library's search paths: plain
exhaustive enumeration over vertex tuples.
"""

from itertools import combinations, permutations

from satlab.graphs import Graph


def petersen() -> Graph:
    return Graph.from_edges(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
         (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
         (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
    )


def naive_contains(h: Graph, f: Graph) -> bool:
    fedges = list(f.edges())
    for combo in combinations(range(h.n), f.n):
        for perm in permutations(combo):
            if all(h.has_edge(perm[a], perm[b]) for a, b in fedges):
                return True
    return False


def naive_completes(h: Graph, e: tuple, f: Graph) -> bool:
    """Unanchored enumeration: any copy in h+e whose edge image covers e."""
    u, v = e
    rows = list(h.rows())
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    hp = Graph(h.n, rows)
    fedges = list(f.edges())
    for combo in combinations(range(hp.n), f.n):
        for perm in permutations(combo):
            if all(hp.has_edge(perm[a], perm[b]) for a, b in fedges):
                if any({perm[a], perm[b]} == {u, v} for a, b in fedges):
                    return True
    return False


def naive_chromatic(g: Graph) -> int:
    if g.edge_count == 0:
        return 1 if g.n else 0
    for k in range(1, g.n + 1):
        if _colorable(g, k):
            return k
    raise AssertionError("unreachable")


def _colorable(g: Graph, k: int) -> bool:
    colors = [-1] * g.n

    def walk(v: int) -> bool:
        if v == g.n:
            return True
        banned = {colors[u] for u in g.neighbors(v) if colors[u] != -1}
        for c in range(min(k, v + 1)):
            if c not in banned:
                colors[v] = c
                if walk(v + 1):
                    return True
                colors[v] = -1
        return False

    return walk(0)

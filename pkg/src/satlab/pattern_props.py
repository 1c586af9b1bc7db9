"""Exact structural analysis of small patterns.

Everything here is exhaustive and exact: chromatic number by saturation-
degree branch and bound, enumeration of all optimal colourings as
unlabelled partitions, block (two-vertex-connected component)
decomposition with single edges counting as blocks, and the two witness
detectors used to route patterns to constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from ._bits import bits_of, mask_of
from .embed import Family, Pattern, contains_copy, pattern_from_graph, strip_isolated
from .errors import ParameterError
from .graphs import Graph


# -- chromatic data -----------------------------------------------------------


def _greedy_bound(g: Graph) -> int:
    colors: dict[int, int] = {}
    order = sorted(range(g.n), key=g.degree, reverse=True)
    for v in order:
        used = {colors[u] for u in g.neighbors(v) if u in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return 1 + max(colors.values(), default=-1)


def chromatic_number(f: Pattern | Graph) -> int:
    """Exact minimum colour count, DSATUR-ordered branch and bound."""
    g = f.graph if isinstance(f, Pattern) else f
    if g.n == 0:
        return 0
    if g.edge_count == 0:
        return 1
    best = _greedy_bound(g)
    colors = [-1] * g.n

    def choose() -> int:
        pick, key = -1, (-1, -1)
        for v in range(g.n):
            if colors[v] != -1:
                continue
            sat = len({colors[u] for u in g.neighbors(v) if colors[u] != -1})
            k = (sat, g.degree(v))
            if k > key:
                pick, key = v, k
        return pick

    def walk(used: int) -> None:
        nonlocal best
        if used >= best:
            return
        v = choose()
        if v == -1:
            best = used
            return
        banned = {colors[u] for u in g.neighbors(v) if colors[u] != -1}
        for c in range(min(used + 1, best - 1)):
            if c in banned:
                continue
            colors[v] = c
            walk(max(used, c + 1))
            colors[v] = -1

    walk(0)
    return best


@dataclass(frozen=True)
class ColouringWitness:
    chi: int
    partitions: tuple[tuple[frozenset, ...], ...]  # all optimal unlabelled partitions
    max_class_size: int  # global maximum class size over all optimal colourings


def optimal_colourings(f: Pattern | Graph) -> ColouringWitness:
    """All partitions of V into exactly chi independent classes.

    Partitions are unlabelled: vertex v may only open class k when classes
    0..k-1 already exist, which enumerates each set partition once.
    """
    g = f.graph if isinstance(f, Pattern) else f
    chi = chromatic_number(g)
    found: list[tuple[frozenset, ...]] = []
    classes: list[list[int]] = []
    class_masks: list[int] = []

    def walk(v: int) -> None:
        if v == g.n:
            if len(classes) == chi:
                found.append(tuple(frozenset(c) for c in classes))
            return
        row = g.row(v)
        for i in range(len(classes)):
            if not row & class_masks[i]:
                classes[i].append(v)
                class_masks[i] |= 1 << v
                walk(v + 1)
                classes[i].pop()
                class_masks[i] &= ~(1 << v)
        if len(classes) < chi:
            classes.append([v])
            class_masks.append(1 << v)
            walk(v + 1)
            classes.pop()
            class_masks.pop()

    walk(0)
    smax = max((len(c) for p in found for c in p), default=0)
    return ColouringWitness(chi, tuple(found), smax)


# -- witness detectors ---------------------------------------------------------


@dataclass(frozen=True)
class NtriangleWitness:
    """A maximum-size colour class whose outside vertex sends all edges into it."""

    i_max: frozenset
    v: int


def detect_ntriangle(f: Pattern) -> Optional[NtriangleWitness]:
    """Search every optimal colouring, every globally-largest class, every
    outside vertex for N(v) contained in the class."""
    g = f.graph
    wit = optimal_colourings(f)
    for partition in wit.partitions:
        for cls in partition:
            if len(cls) != wit.max_class_size:
                continue
            cmask = mask_of(cls)
            for v in range(g.n):
                if v in cls:
                    continue
                if g.row(v) & ~cmask == 0:
                    return NtriangleWitness(cls, v)
    return None


# -- blocks and degeneracy ------------------------------------------------------


def blocks(g: Pattern | Graph) -> list[frozenset]:
    """Edge sets of the maximal two-vertex-connected subgraphs.

    Standard Hopcroft-Tarjan stack algorithm; bridges yield K2 blocks,
    so every edge lands in exactly one block.
    """
    if isinstance(g, Pattern):
        g = g.graph
    disc = [-1] * g.n
    low = [0] * g.n
    stack: list[tuple[int, int]] = []
    out: list[frozenset] = []
    timer = 0

    def dfs(root: int) -> None:
        nonlocal timer
        work = [(root, -1, g.neighbors(root))]
        disc[root] = low[root] = timer
        timer += 1
        while work:
            v, parent, it = work[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    stack.append((v, u) if v < u else (u, v))
                    disc[u] = low[u] = timer
                    timer += 1
                    work.append((u, v, g.neighbors(u)))
                    advanced = True
                    break
                elif u != parent and disc[u] < disc[v]:
                    stack.append((v, u) if v < u else (u, v))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    edge = (pv, v) if pv < v else (v, pv)
                    comp = set()
                    while stack:
                        e = stack.pop()
                        comp.add(e)
                        if e == edge:
                            break
                    if comp:
                        out.append(frozenset(comp))

    for v in range(g.n):
        if disc[v] == -1 and g.degree(v) > 0:
            dfs(v)
    return out


def two_vertex_connected_subgraphs(g: Graph) -> list[Graph]:
    """Every connected subgraph on >= 2 vertices with no cut vertex.

    Exponential; only used as the naive cross-check oracle on tiny patterns.
    """
    found = []
    edges = list(g.edges())
    for r in range(1, len(edges) + 1):
        for combo in combinations(edges, r):
            verts = sorted({v for e in combo for v in e})
            sub = Graph.from_edges(len(verts), [
                (verts.index(u), verts.index(v)) for u, v in combo
            ])
            if sub.n >= 2 and _is_two_vertex_connected(sub):
                found.append(sub)
    return found


def _is_two_vertex_connected(g: Graph) -> bool:
    if g.n < 2:
        return False
    if not _connected(g):
        return False
    if g.n == 2:
        return g.edge_count == 1
    for v in range(g.n):
        keep = [u for u in range(g.n) if u != v]
        sub, _ = g.induced(keep)
        if not _connected(sub):
            return False
    return True


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for u in bits_of(g.row(v) & ~seen):
            seen |= 1 << u
            frontier.append(u)
    return seen == (1 << g.n) - 1


def is_degenerate(b: Graph, a: Pattern) -> bool:
    """True iff every block of b embeds into a as a subgraph.

    Any two-vertex-connected subgraph lies inside one block, so checking
    blocks suffices.
    """
    for blk in blocks(b):
        verts = sorted({v for e in blk for v in e})
        idx = {v: i for i, v in enumerate(verts)}
        sub = Graph.from_edges(len(verts), [(idx[u], idx[v]) for u, v in blk])
        if contains_copy(a.graph, pattern_from_graph(sub, "blk")) is None:
            return False
    return True


def _is_degenerate_naive(b: Graph, a: Pattern) -> bool:
    """Cross-check: enumerate all two-vertex-connected subgraphs directly."""
    for sub in two_vertex_connected_subgraphs(b):
        if contains_copy(a.graph, pattern_from_graph(sub, "tvc")) is None:
            return False
    return True


# -- star-property detector ------------------------------------------------------


@dataclass(frozen=True)
class StarWitness:
    """Edge {u,v} such that removing any independent set leaves a graph with a
    two-vertex-connected piece that does not embed into the pattern minus {u,v}."""

    u: int
    v: int


def independent_sets(g: Graph) -> list[frozenset]:
    """All independent sets, the empty set included."""
    out = [frozenset()]
    verts = list(range(g.n))

    def walk(start: int, chosen: list[int], banned: int) -> None:
        for i in range(start, g.n):
            v = verts[i]
            if (banned >> v) & 1:
                continue
            chosen.append(v)
            out.append(frozenset(chosen))
            walk(i + 1, chosen, banned | (1 << v) | g.row(v))
            chosen.pop()

    walk(0, [], 0)
    return out


def _delete_vertices(g: Graph, drop: frozenset) -> Graph:
    keep = [v for v in range(g.n) if v not in drop]
    sub, _ = g.induced(keep)
    return sub


def detect_star(f: Pattern, naive: bool = False) -> Optional[StarWitness]:
    """First edge passing the every-independent-set non-degeneracy test.

    naive=True swaps the block-based degeneracy check for direct
    enumeration of all two-vertex-connected subgraphs (oracle mode).
    """
    g = f.graph
    check = _is_degenerate_naive if naive else is_degenerate
    ind_sets = independent_sets(g)
    for u, v in g.edges():
        remainder = strip_isolated(_delete_vertices(g, frozenset({u, v})))
        if remainder.edge_count == 0:
            # degeneracy target has no edges: any surviving block breaks it
            target = None
        else:
            # isolated target vertices can never host a block vertex
            target = pattern_from_graph(remainder, f"{f.name}-e")
        ok = True
        for ind in ind_sets:
            rest = _delete_vertices(g, ind)
            if target is None:
                degenerate = not blocks(rest) if not naive else not two_vertex_connected_subgraphs(rest)
            else:
                degenerate = check(rest, target)
            if degenerate:
                ok = False
                break
        if ok:
            return StarWitness(u, v)
    return None


# -- bipartite side minimum --------------------------------------------------------


def proper_two_colourings(g: Graph) -> list[tuple[frozenset, frozenset]]:
    """All 2-colourings up to class order; empty if g is not bipartite."""
    color = [-1] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if color[s] != -1:
            continue
        comp = [s]
        color[s] = len(comps) * 2
        queue = [s]
        ok = True
        while queue:
            v = queue.pop()
            for u in g.neighbors(v):
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    comp.append(u)
                    queue.append(u)
                elif (color[u] ^ color[v]) != 1:
                    ok = False
        if not ok:
            return []
        comps.append(comp)
    # per-component flip choices
    out = []
    k = len(comps)
    for flips in range(1 << k):
        side0, side1 = set(), set()
        for i, comp in enumerate(comps):
            flip = (flips >> i) & 1
            for v in comp:
                bit = (color[v] & 1) ^ flip
                (side1 if bit else side0).add(v)
        if side0 and side1:
            pair = (frozenset(side0), frozenset(side1))
            if (pair[1], pair[0]) not in out:
                out.append(pair)
    return out


def family_min_bipartite_side(fam: Family) -> Optional[tuple[int, Pattern]]:
    """Minimum colour-class size over all 2-colourings of bipartite members."""
    best: Optional[tuple[int, Pattern]] = None
    for f in fam:
        for a, b in proper_two_colourings(f.graph):
            side = min(len(a), len(b))
            if best is None or side < best[0]:
                best = (side, f)
    return best

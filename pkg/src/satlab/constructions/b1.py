"""Near-regular low-degree subgraph machinery for the dense-host regime.

build_H_B1 grows a union of matchings, one per exposure round: pairs whose
common A1-neighborhood clears a threshold form an auxiliary graph, each
such pair is exposed as (s2-1) coupled Bernoulli rounds, and round i's
successes feed a greedy maximal matching that must keep the union
4-cycle-free. The union has maximum degree s2-1, is C4-free, and every
edge keeps the co-degree guarantee, which together force freeness of the
relevant complete bipartite pattern.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .._bits import bits_of, mask_of
from ..errors import CouplingViolation, ParameterError
from ..gnp import DeferredGnp, split_rounds_probability
from ..graphs import Graph
from .params import ConstructionReport, Params, codegree_edge_threshold


def _a_rows_u64(g: DeferredGnp, verts: Sequence[int], a1: Sequence[int]) -> np.ndarray:
    """uint64 adjacency-into-a1 rows (bit i = adjacency to a1[i])."""
    if len(a1) > 64:
        raise ParameterError("a1 larger than 64 vertices; widen the row type")
    rows = np.zeros(len(verts), dtype=np.uint64)
    for j, v in enumerate(verts):
        m = g._value[v]
        packed = 0
        for i, a in enumerate(a1):
            packed |= ((m >> a) & 1) << i
        rows[j] = packed
    return rows


def build_H_B1(
    g: DeferredGnp,
    b1: Sequence[int],
    a1: Sequence[int],
    s1: int,
    s2: int,
    params: Params,
) -> tuple[Graph, ConstructionReport]:
    """Union of per-round C4-free matchings over threshold pairs of b1.

    Requires every a1-b1 pair to be exposed and no b1-internal pair to be;
    the b1-internal pairs are consumed here (threshold pairs through the
    round splitting, the rest plainly).
    """
    if s2 < 2:
        raise ParameterError("s2 must be at least 2")
    b1 = sorted(set(b1))
    a1 = sorted(set(a1))
    report = ConstructionReport("b1", g.n, g.p, params.seed)
    gamma = params.resolved_gamma(s2)
    threshold = codegree_edge_threshold(g.n, g.p, params.eps, gamma)
    report.sizes["b1"] = len(b1)
    report.sizes["a1"] = len(a1)
    report.sizes["edge_threshold"] = round(threshold, 6)

    a1_mask = mask_of(a1)
    b1_mask = mask_of(b1)
    for v in b1:
        if (g._exposed[v] & a1_mask) != a1_mask:
            raise CouplingViolation(f"vertex {v}: a1 pairs not fully exposed")
        if g._exposed[v] & b1_mask & ~(1 << v):
            raise CouplingViolation(f"vertex {v}: b1-internal pairs already exposed")

    rounds = s2 - 1
    q = split_rounds_probability(g.p, rounds)
    report.sizes["rounds"] = rounds
    report.sizes["round_probability"] = round(q, 9)

    # threshold pairs via vectorised co-degree counts
    arows = _a_rows_u64(g, b1, a1)
    round_edges: list[list[tuple[int, int]]] = [[] for _ in range(rounds)]
    gamma_pairs = 0
    for i, u in enumerate(b1):
        if i + 1 == len(b1):
            break
        codeg = np.bitwise_count(arows[i] & arows[i + 1 :])
        hits = np.nonzero(codeg >= threshold)[0]
        for off in hits:
            v = b1[i + 1 + int(off)]
            gamma_pairs += 1
            indicators = g.expose_pair_rounds(u, v, rounds, q)
            for r, flag in enumerate(indicators):
                if flag:
                    round_edges[r].append((u, v))
    report.sizes["threshold_pairs"] = gamma_pairs
    # everything else in b1 is exposed plainly and excluded from matching
    g.expose_block(b1)

    union_adj: dict[int, set[int]] = {v: set() for v in b1}

    def creates_c4(u: int, v: int) -> bool:
        for x in union_adj[u]:
            for y in union_adj[x]:
                if y != u and v in union_adj[y]:
                    return True
        return False

    edges: list[tuple[int, int]] = []
    for r in range(rounds):
        matched: set[int] = set()
        for u, v in round_edges[r]:
            if u in matched or v in matched:
                continue
            if v in union_adj[u]:
                continue
            if creates_c4(u, v):
                continue
            matched.add(u)
            matched.add(v)
            union_adj[u].add(v)
            union_adj[v].add(u)
            edges.append((u, v))
        report.unmatched_per_round.append(len(b1) - len(matched))

    out = Graph.from_edges(g.n, edges)
    report.add_phase("matching_union", out.edge_count)
    report.edges_before_patch = out.edge_count
    report.edges_final = out.edge_count
    report.sizes["max_degree"] = max((out.degree(v) for v in b1), default=0)
    report.verified = "true"
    report.check_accounting()
    return out, report


def ks2_factor(gb2: Graph, s2: int) -> tuple[list[frozenset], frozenset]:
    """Greedy vertex-disjoint packing of s2-cliques; leftover is unpacked.

    Vertices are scanned in ascending order; each looks for the
    lexicographically first clique completion among unused vertices.
    """
    if s2 < 1:
        raise ParameterError("s2 must be at least 1")
    n = gb2.n
    used = 0
    packing: list[frozenset] = []
    if s2 == 1:
        return [frozenset({v}) for v in range(n)], frozenset()

    def extend(members: list[int], cand: int) -> bool:
        # cand: unused common neighbors above the last chosen vertex
        if len(members) == s2:
            return True
        for v in bits_of(cand):
            members.append(v)
            if extend(members, cand & gb2.row(v) & ~((1 << (v + 1)) - 1)):
                return True
            members.pop()
        return False

    for v in range(n):
        if (used >> v) & 1:
            continue
        members = [v]
        if extend(members, gb2.row(v) & ~used & ~((1 << (v + 1)) - 1)):
            packing.append(frozenset(members))
            used |= mask_of(members)
    leftover = frozenset(v for v in range(n) if not (used >> v) & 1)
    return packing, leftover
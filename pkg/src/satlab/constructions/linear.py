"""Constructions with linearly many edges, plus the inductive O(n log n) one.

All three share the same skeleton: place disjoint anchor sets, harvest
their common neighborhoods, add the anchor-to-harvest edges, then grow by
completion-gated passes and a final deterministic patch. Every gated
addition preserves family-freeness, so the final patch always lands on a
saturated graph regardless of how degenerate the phases were at small n.
"""

from __future__ import annotations

import math
import time
from typing import Sequence

from .._bits import bits_of, mask_of
from ..embed import Family, Pattern, copy_through, pattern_from_graph, strip_isolated
from ..errors import ApplicabilityError, ConstructionFailure, SizeError
from ..gnp import DeferredGnp
from ..graphs import Graph, MutableGraph
from ..pattern_props import (
    chromatic_number,
    detect_ntriangle,
    family_min_bipartite_side,
    independent_sets,
)
from ..saturation import greedy_saturate
from .finish import finalize
from .params import ConstructionReport, Params, bipartite_tau
from .routes import make_fast_route


def _gated_additions(
    work: MutableGraph,
    g: Graph,
    fam: Family,
    pairs,
    route=None,
    rejected=None,
) -> int:
    """Add each pair (order supplied by caller) that keeps work fam-free.

    route is a sound already-completed test; hits skip the exhaustive
    anchored search. Gate rejections are completions, so they are recorded
    into `rejected` and reused by the later counting pass (completion is
    monotone under additions).
    """
    added = 0
    for u, v in pairs:
        if work.has_edge(u, v) or not g.has_edge(u, v):
            continue
        if route is not None and route(u, v):
            if rejected is not None:
                rejected[u] |= 1 << v
                rejected[v] |= 1 << u
            continue
        work.add_edge(u, v)
        if copy_through(work, u, v, fam):
            work.remove_edge(u, v)
            if rejected is not None:
                rejected[u] |= 1 << v
                rejected[v] |= 1 << u
        else:
            added += 1
    return added


def _pairs_within(members: Sequence[int]):
    ms = sorted(members)
    for i, u in enumerate(ms):
        for v in ms[i + 1 :]:
            yield u, v


def _pairs_between(a: Sequence[int], b: Sequence[int]):
    for u in sorted(a):
        for v in sorted(b):
            yield (u, v) if u < v else (v, u)


def _harvest_blocks(
    g: Graph, anchors: list[list[int]], reserved: int
) -> tuple[list[list[int]], int]:
    """B_i = common neighbors of anchor set i among the still-unclaimed vertices."""
    claimed = reserved
    harvests = []
    full = (1 << g.n) - 1
    for a in anchors:
        avail = full & ~claimed
        m = avail
        for x in a:
            m &= g.row(x)
        harvests.append(list(bits_of(m)))
        claimed |= m
    return harvests, claimed


def construct_bipartite_family(
    g: DeferredGnp, fam: Family, params: Params
) -> tuple[Graph, ConstructionReport]:
    """Anchor sets of size (min bipartite side - 1), harvested neighborhoods,
    gated growth, patch. Star families short-circuit to the greedy baseline."""
    t0 = time.perf_counter()
    found = family_min_bipartite_side(fam)
    if found is None:
        raise ApplicabilityError(f"{fam.name}: no bipartite member")
    ell, f0 = found
    report = ConstructionReport("bipartite", g.n, g.p, params.seed)
    report.sizes["ell"] = ell
    report.sizes["f0"] = f0.name
    host = g.to_graph()

    if ell < 2:
        # a star member caps every saturated graph's degree; greedy suffices
        h = greedy_saturate(host, fam, params.seed)
        report.add_phase("greedy", h.edge_count)
        final = finalize(host, h, fam, report, t0, params.verify_guard, params.verify_samples)
        return final, report

    n = g.n
    tau = bipartite_tau(n, g.p, ell)
    if params.n_min is not None and n < params.n_min:
        raise SizeError(f"n={n} below configured n_min={params.n_min}")
    if tau * (ell - 1) > n // 2:
        raise SizeError(f"n={n} too small: tau*(ell-1) = {tau * (ell - 1)} > n/2")
    report.sizes["tau"] = tau
    report.sizes["internal_degree_cap"] = f0.n - ell - 1

    anchors = [
        list(range(i * (ell - 1), (i + 1) * (ell - 1))) for i in range(tau)
    ]
    a_mask = mask_of(range(tau * (ell - 1)))
    harvests, _ = _harvest_blocks(host, anchors, a_mask)
    report.sizes["harvest_total"] = sum(len(b) for b in harvests)

    work = MutableGraph(n)
    live_route = make_fast_route(work.rows, fam)
    rejected = [0] * n
    for a, b in zip(anchors, harvests):
        for x in a:
            for y in b:
                work.add_edge(x, y)
    report.add_phase("anchor_harvest", work.edge_total())

    before = work.edge_total()
    for b in harvests:
        _gated_additions(work, host, fam, _pairs_within(b), live_route, rejected)
    report.add_phase("harvest_internal", work.edge_total() - before)
    cap = f0.n - ell - 1
    for b in harvests:
        over = [v for v in b if (work.rows[v] & mask_of(b)).bit_count() > cap]
        if over:
            report.warnings.append(f"internal degree cap {cap} exceeded at {over[:3]}")

    before = work.edge_total()
    remaining = (1 << n) - 1
    for b in harvests:
        remaining &= ~mask_of(b)
        outside = remaining & ~a_mask
        _gated_additions(work, host, fam, _pairs_between(b, list(bits_of(outside))), live_route, rejected)
    report.add_phase("cross", work.edge_total() - before)

    before = work.edge_total()
    leftover = list(bits_of(remaining & ~a_mask))
    _gated_additions(work, host, fam, _pairs_within(leftover), live_route, rejected)
    report.add_phase("leftover_internal", work.edge_total() - before)
    report.sizes["leftover"] = len(leftover)

    pre = work.freeze()
    final = finalize(
        host, pre, fam, report, t0, params.verify_guard, params.verify_samples,
        fast_route=_combine_routes(rejected, make_fast_route(pre.rows(), fam)),
    )
    return final, report


def _combine_routes(rejected, route):
    if route is None:
        return lambda u, v: bool((rejected[u] >> v) & 1)
    return lambda u, v: bool((rejected[u] >> v) & 1) or route(u, v)


def construct_ntriangle(
    g: DeferredGnp, f: Pattern, params: Params
) -> tuple[Graph, ConstructionReport]:
    """Anchor sets induce a fixed pattern remainder; joining any vertex to
    enough harvested common neighbors closes the full pattern."""
    t0 = time.perf_counter()
    wit = detect_ntriangle(f)
    if wit is None:
        raise ApplicabilityError(f"{f.name}: no colour-class witness")
    fam = Family.of(f)
    report = ConstructionReport("ntriangle", g.n, g.p, params.seed)
    host = g.to_graph()
    n = g.n

    core_graph, _ = f.graph.induced(
        [v for v in range(f.n) if v not in wit.i_max and v != wit.v]
    )
    core_size = core_graph.n
    report.sizes["core_size"] = core_size
    report.sizes["i_max"] = len(wit.i_max)

    if core_size == 0:
        # pattern is a star around the witness vertex; greedy suffices
        h = greedy_saturate(host, fam, params.seed)
        report.add_phase("greedy", h.edge_count)
        final = finalize(host, h, fam, report, t0, params.verify_guard, params.verify_samples)
        return final, report

    tau = bipartite_tau(n, g.p, core_size + 1)
    pool_size = min(max(math.ceil(n**params.eps), 2 * tau * core_size), n // 2)
    report.sizes["tau"] = tau
    report.sizes["pool"] = pool_size

    pool = list(range(pool_size))
    anchors = _find_induced_copies(host, pool, core_graph, tau)
    if not anchors:
        raise ConstructionFailure(
            f"embedding pool exhausted: no induced {f.name}-remainder copy in {pool_size} vertices"
        )
    if len(anchors) < tau:
        report.warnings.append(
            f"pool placed only {len(anchors)}/{tau} anchor copies; patch absorbs the rest"
        )
    report.sizes["anchors_placed"] = len(anchors)

    pool_mask = mask_of(pool)
    harvests, _ = _harvest_blocks(host, anchors, pool_mask)
    report.sizes["harvest_total"] = sum(len(b) for b in harvests)

    work = MutableGraph(n)
    core_edges = list(core_graph.edges())
    for a in anchors:
        for i, j in core_edges:
            work.add_edge(a[i], a[j])
    report.add_phase("anchor_pattern", work.edge_total())

    before = work.edge_total()
    for a, b in zip(anchors, harvests):
        for x in a:
            for y in b:
                work.add_edge(x, y)
    report.add_phase("anchor_harvest", work.edge_total() - before)

    live_route = make_fast_route(work.rows, fam)
    rejected = [0] * n
    before = work.edge_total()
    for b in harvests:
        _gated_additions(work, host, fam, _pairs_within(b), live_route, rejected)
    report.add_phase("harvest_internal", work.edge_total() - before)

    before = work.edge_total()
    remaining = ((1 << n) - 1) & ~pool_mask
    for b in harvests:
        remaining &= ~mask_of(b)
        _gated_additions(work, host, fam, _pairs_between(b, list(bits_of(remaining))), live_route, rejected)
    report.add_phase("cross", work.edge_total() - before)

    pre = work.freeze()
    final = finalize(
        host, pre, fam, report, t0, params.verify_guard, params.verify_samples,
        fast_route=_combine_routes(rejected, make_fast_route(pre.rows(), fam)),
    )
    return final, report


def _find_induced_copies(
    host: Graph, pool: list[int], core: Graph, want: int
) -> list[list[int]]:
    """Greedy vertex-disjoint induced copies of core inside host[pool]."""
    used = 0
    out: list[list[int]] = []
    pool_mask = mask_of(pool)

    def place(assigned: list[int]) -> bool:
        if len(assigned) == core.n:
            return True
        q = len(assigned)
        for v in bits_of(pool_mask & ~used & ~mask_of(assigned)):
            ok = True
            for i, w in enumerate(assigned):
                if core.has_edge(i, q) != host.has_edge(w, v):
                    ok = False
                    break
            if ok:
                assigned.append(v)
                if place(assigned):
                    return True
                assigned.pop()
        return False

    for _ in range(want):
        spot: list[int] = []
        if not place(spot):
            break
        out.append(spot)
        used |= mask_of(spot)
    return out


def _expand_family(fam: Family) -> Family:
    """All member remainders after deleting an independent set (isolates stripped)."""
    pats = []
    for f in fam:
        for ind in independent_sets(f.graph):
            keep = [v for v in range(f.n) if v not in ind]
            sub, _ = f.graph.induced(keep)
            sub = strip_isolated(sub)
            if sub.edge_count == 0:
                continue
            pats.append(pattern_from_graph(sub, f"{f.name}-I{len(ind)}.{len(pats)}"))
    if not pats:
        raise ApplicabilityError("expanded family is empty")
    return Family.of(*pats)


def construct_inductive(
    g: DeferredGnp, fam: Family, params: Params
) -> tuple[Graph, ConstructionReport]:
    """Recursive construction: reserve a logarithmic block, saturate the rest
    for the family of independent-set remainders, wire the block fully."""
    t0 = time.perf_counter()
    if len(fam) == 0:
        raise ApplicabilityError("empty family")
    chi0 = min(chromatic_number(f) for f in fam)
    if chi0 <= 2:
        # no recursion: identical result path to the bipartite construction
        final, report = construct_bipartite_family(g, fam, params)
        report.construction = "inductive"
        report.sizes["chi"] = chi0
        report.sizes["depth"] = 0
        return final, report
    report = ConstructionReport("inductive", g.n, g.p, params.seed)
    host = g.to_graph()
    report.sizes["chi"] = chi0
    report.sizes["depth"] = chi0 - 2

    work = MutableGraph(g.n)
    _inductive_level(host, g.p, list(range(g.n)), fam, params, work, report, level=0)
    final = finalize(
        host, work.freeze(), fam, report, t0, params.verify_guard, params.verify_samples
    )
    return final, report


def _inductive_level(
    host: Graph,
    p: float,
    verts: list[int],
    fam: Family,
    params: Params,
    work: MutableGraph,
    report: ConstructionReport,
    level: int,
) -> None:
    """Build a fam-saturated subgraph of host[verts] into work (global ids)."""
    tag = f"lvl{level}"
    m = len(verts)
    if m < 2:
        return
    chi0 = min(chromatic_number(f) for f in fam)
    sub, order = host.induced(verts)

    if chi0 <= 2:
        found = family_min_bipartite_side(fam)
        if found is not None and found[0] >= 2 and m >= 4 * bipartite_tau(m, p, found[0]) * (found[0] - 1):
            local = _bipartite_phases_on_graph(sub, p, fam, params, report, tag)
        else:
            local = greedy_saturate(sub, fam, params.seed + level)
            report.add_phase(f"{tag}.greedy", local.edge_count)
        _merge(work, local, order)
        return

    c_ind = params.C_ind
    if c_ind is None:
        v_max = max(f.n for f in fam)
        c_ind = params.formula_C_ind(v_max, p)
    block = min(max(2, math.ceil(c_ind * math.log(m))), m // 4)
    a_set = verts[:block]
    rest = verts[block:]
    report.sizes[f"{tag}.block"] = block

    expanded = _expand_family(fam)
    _inductive_level(host, p, rest, expanded, params, work, report, level + 1)

    before = work.edge_total()
    for a in a_set:
        arow = host.row(a) & mask_of(rest)
        for v in bits_of(arow):
            work.add_edge(a, v)
    report.add_phase(f"{tag}.cross_block", work.edge_total() - before)
    # the level's own leftovers (block-internal pairs, lift failures) fall
    # through to the single final patch, which runs with the root family

    # empirical check of the lift requirement: sampled pattern-sized sets of
    # the remainder should find enough common neighbors in the block
    import random as _random

    rng = _random.Random(params.seed + level)
    v_max = max(f.n for f in fam)
    a_mask = mask_of(a_set)
    hits = trials = 0
    for _ in range(min(200, max(20, len(rest) // 4))):
        xs = rng.sample(rest, min(v_max, len(rest)))
        m = a_mask
        for x in xs:
            m &= host.row(x)
        trials += 1
        hits += m.bit_count() >= v_max
    report.diag[f"{tag}.codegree_event"] = round(hits / max(trials, 1), 4)


def _bipartite_phases_on_graph(
    sub: Graph, p: float, fam: Family, params: Params, report: ConstructionReport, tag: str
) -> Graph:
    """Anchor/harvest/gated phases of the bipartite construction on a
    materialized graph (used by the inductive base case)."""
    found = family_min_bipartite_side(fam)
    assert found is not None
    ell, _ = found
    n = sub.n
    tau = max(1, bipartite_tau(n, p, ell))
    if tau * (ell - 1) > n // 2:
        return greedy_saturate(sub, fam, params.seed)
    anchors = [list(range(i * (ell - 1), (i + 1) * (ell - 1))) for i in range(tau)]
    a_mask = mask_of(range(tau * (ell - 1)))
    harvests, _ = _harvest_blocks(sub, anchors, a_mask)
    work = MutableGraph(n)
    for a, b in zip(anchors, harvests):
        for x in a:
            for y in b:
                work.add_edge(x, y)
    for b in harvests:
        _gated_additions(work, sub, fam, _pairs_within(b))
    remaining = (1 << n) - 1
    for b in harvests:
        remaining &= ~mask_of(b)
        _gated_additions(work, sub, fam, _pairs_between(b, list(bits_of(remaining & ~a_mask))))
    # saturate the remainder of the subinstance: its caller needs maximality
    out, _ = _patch_subgraph(sub, work, fam)
    report.add_phase(f"{tag}.bipartite_base", out.edge_count)
    return out


def _patch_subgraph(sub: Graph, work: MutableGraph, fam: Family) -> tuple[Graph, int]:
    added = 0
    for u in range(sub.n):
        missing = (sub.row(u) & ~work.rows[u]) >> (u + 1)
        for off in bits_of(missing):
            v = off + u + 1
            work.add_edge(u, v)
            if copy_through(work, u, v, fam):
                work.remove_edge(u, v)
            else:
                added += 1
    return work.freeze(), added


def _merge(work: MutableGraph, local: Graph, order: list[int]) -> None:
    for u, v in local.edges():
        work.add_edge(order[u], order[v])

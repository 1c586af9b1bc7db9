"""Constructions whose edge counts track n * log_{1/(1-p)} n.

Both constructions share one skeleton. A logarithmic core A1 keeps all its
edges to the bulk; two much smaller reserves A2 and A3 back up vertices
whose A1-degree falls outside the good window. The multipartite variant
additionally equips the bulk with a near-regular low-degree subgraph
(threshold matchings on the good part, a codegree-aware clique factor on
the rest) so every bulk vertex owns a small anchor whose joint A-side
neighborhood closes the full pattern.

Completion scanning is vectorised when the whole A-side fits in one 64-bit
word per vertex: a pair's joint common-neighborhood size is then two ANDs
and a popcount. Mask hits are sound skips; surviving pairs get the exact
anchored search, so the reported uncompleted counts stay exact.
"""

from __future__ import annotations

import math
import random
import time
from typing import Optional, Sequence

import numpy as np

from .._bits import bits_of, mask_of
from ..embed import (
    Family,
    Pattern,
    clique,
    complete_multipartite,
    contains_copy,
    copy_through,
    pattern_from_graph,
    strip_isolated,
)
from ..errors import ApplicabilityError, ParameterError, SizeError
from ..gnp import DeferredGnp
from ..graphs import Graph, MutableGraph
from ..pattern_props import detect_star, independent_sets
from ..saturation import is_family_free
from .b1 import build_H_B1, ks2_factor
from .dense_free import build_dense_free
from .finish import verify_and_stamp
from .params import ConstructionReport, Params, derive_log_sizes

_A_WORD = 64


def greedy_color_classes(g: Graph) -> list[list[int]]:
    """Saturation-degree greedy colouring; returns the colour classes."""
    colors: dict[int, int] = {}
    classes: list[list[int]] = []
    for _ in range(g.n):
        pick, key = -1, (-2, -2)
        for v in range(g.n):
            if v in colors:
                continue
            sat = len({colors[u] for u in g.neighbors(v) if u in colors})
            k = (sat, g.degree(v))
            if k > key:
                pick, key = v, k
        banned = {colors[u] for u in g.neighbors(pick) if u in colors}
        c = 0
        while c in banned:
            c += 1
        colors[pick] = c
        while len(classes) <= c:
            classes.append([])
        classes[c].append(pick)
    return [sorted(cls) for cls in classes]


def _row_buffer(g: Graph) -> np.ndarray:
    """n x ceil(n/8) uint8 matrix of adjacency bits (little-endian)."""
    nbytes = (g.n + 7) // 8
    buf = np.empty((g.n, nbytes), dtype=np.uint8)
    for v in range(g.n):
        buf[v] = np.frombuffer(g.row(v).to_bytes(nbytes, "little"), dtype=np.uint8)
    return buf


def _bits_above(row_bytes: np.ndarray, n: int, u: int) -> np.ndarray:
    bools = np.unpackbits(row_bytes, bitorder="little", count=n)
    bools[: u + 1] = 0
    return np.nonzero(bools)[0]


class _ASide:
    """Packed A-side adjacency, the sparse graphs living on A, zone masks."""

    def __init__(self, aorder: list[int]):
        self.aorder = aorder
        self.width = len(aorder)
        self.apos = {v: i for i, v in enumerate(aorder)}
        self.zone_a1 = 0
        self.zone_a2 = 0
        self.zone_a3 = 0
        self.ha_rows: dict[int, int] = {}  # A-position -> A-position bitmask

    def pack_row(self, grow: int) -> int:
        packed = 0
        for i, a in enumerate(self.aorder):
            packed |= ((grow >> a) & 1) << i
        return packed

    def add_ha_edges(self, local: Graph, order: list[int]) -> None:
        for u, v in local.edges():
            pu, pv = self.apos[order[u]], self.apos[order[v]]
            self.ha_rows[pu] = self.ha_rows.get(pu, 0) | (1 << pv)
            self.ha_rows[pv] = self.ha_rows.get(pv, 0) | (1 << pu)

    def core_in(self, smask: int, core: Graph) -> bool:
        """Does the A-side sparse graph restricted to smask contain core?"""
        positions = list(bits_of(smask))
        if len(positions) < core.n:
            return False
        index = {p: j for j, p in enumerate(positions)}
        local_rows = []
        for p in positions:
            m = self.ha_rows.get(p, 0) & smask
            packed = 0
            while m:
                low = m & -m
                packed |= 1 << index[low.bit_length() - 1]
                m ^= low
            local_rows.append(packed)
        host = Graph(len(positions), local_rows)
        return contains_copy(host, pattern_from_graph(core, "core")) is not None


def _build_a_zone(
    G: Graph,
    members: list[int],
    forbidden: Family,
    target: Optional[Pattern],
    seed: int,
    aside: _ASide,
    report: ConstructionReport,
    tag: str,
) -> Optional[float]:
    """Dense-free build on one A zone; edges recorded into aside. Returns the
    density probe score (None when the probe cannot run)."""
    if not members:
        return None
    sub, order = G.induced(members)
    local, probe = build_dense_free(sub, forbidden, target, seed)
    aside.add_ha_edges(local, order)
    score = probe.hit_fraction if probe is not None else None
    if score is not None:
        report.diag[f"{tag}.density_probe"] = round(score, 4)
        if score < 0.5:
            report.warnings.append(f"{tag}: weak density probe {score:.2f}")
    return score


def _add_zone_edges(work: MutableGraph, aside: _ASide, members: list[int]) -> int:
    pos, back = aside.apos, aside.aorder
    mem = set(members)
    added = 0
    for v in members:
        row = aside.ha_rows.get(pos[v], 0)
        for pu in bits_of(row):
            u = back[pu]
            if u in mem and v < u and not work.has_edge(v, u):
                work.add_edge(v, u)
                added += 1
    return added


def _completion_need(s: Sequence[int]) -> tuple[int, Optional[Graph]]:
    """Vertices needed from the joint A-side neighborhood, and the edge core
    of the pattern those vertices must induce (None when edgeless)."""
    parts = [s[0] - 1] + list(s[2:])
    parts = [x for x in parts if x > 0]
    need = sum(parts)
    if len(parts) >= 2:
        return need, complete_multipartite(parts).graph
    return need, None


class _MaskScan:
    """Sound vectorised completion test over bulk pairs.

    R(v) is the AND of packed A-rows over {v} and v's anchor Q(v), split by
    zone validity (A1 always; A2 only when the whole anchor side sits in
    the bad part and the partner does too; A3 likewise for the good part).
    A pair passes when the zone-restricted joint count reaches the need
    (plus a hosted-core confirmation when the core has edges).
    """

    def __init__(
        self,
        G: Graph,
        aside: _ASide,
        anchor_of: dict[int, frozenset],
        anchor_size: int,
        need: int,
        core: Optional[Graph],
        b1: frozenset,
        b2: frozenset,
    ):
        self.aside = aside
        self.need = need
        self.core = core
        self.b1 = b1
        self.b2 = b2
        n = G.n
        self.narrow = aside.width <= _A_WORD
        self.arow_int: list[int] = [aside.pack_row(G.row(v)) for v in range(n)]
        self.r1_int = [0] * n
        self.r2_int = [0] * n
        self.r3_int = [0] * n
        self.anchored = [False] * n
        za1, za2, za3 = aside.zone_a1, aside.zone_a2, aside.zone_a3
        for v, q in anchor_of.items():
            if len(q) != anchor_size:
                continue
            r = self.arow_int[v]
            for w in q:
                r &= self.arow_int[w]
            self.anchored[v] = True
            self.r1_int[v] = r & za1
            if v in b2 and all(w in b2 for w in q):
                self.r2_int[v] = r & za2
            if v in b1 and all(w in b1 for w in q):
                self.r3_int[v] = r & za3
        self.in_bulk = [False] * n
        for v in b1 | b2:
            self.in_bulk[v] = True
        self.np_inbulk = np.array(self.in_bulk, dtype=bool)
        if self.narrow:
            self.np_arow = np.array(self.arow_int, dtype=np.uint64)
            self.np_r1 = np.array(self.r1_int, dtype=np.uint64)
            self.np_r2 = np.array(self.r2_int, dtype=np.uint64)
            self.np_r3 = np.array(self.r3_int, dtype=np.uint64)
            self.np_anch = np.array(self.anchored, dtype=bool)
            self.np_b1 = np.zeros(n, dtype=bool)
            self.np_b2 = np.zeros(n, dtype=bool)
            for v in b1:
                self.np_b1[v] = True
            for v in b2:
                self.np_b2[v] = True

    def completed_flags(self, u: int, vs: np.ndarray) -> np.ndarray:
        """Sound completion flags for bulk pairs (u, v); u must be in bulk."""
        if self.narrow:
            return self._flags_np(u, vs)
        return np.array([self._pair_py(u, int(v)) for v in vs], dtype=bool)

    def _flags_np(self, u: int, vs: np.ndarray) -> np.ndarray:
        need = np.int64(self.need)
        arows = self.np_arow[vs]
        out = np.zeros(len(vs), dtype=bool)
        if self.anchored[u]:
            counts = np.bitwise_count(np.uint64(self.r1_int[u]) & arows).astype(np.int64)
            if self.r2_int[u]:
                counts += np.where(
                    self.np_b2[vs],
                    np.bitwise_count(np.uint64(self.r2_int[u]) & arows),
                    np.uint64(0),
                ).astype(np.int64)
            if self.r3_int[u]:
                counts += np.where(
                    self.np_b1[vs],
                    np.bitwise_count(np.uint64(self.r3_int[u]) & arows),
                    np.uint64(0),
                ).astype(np.int64)
            if self.core is None:
                out |= counts >= need
            else:
                for idx in np.nonzero(counts >= need)[0]:
                    out[idx] = self._core_confirm(u, int(vs[idx]))
        au = np.uint64(self.arow_int[u])
        counts = np.bitwise_count(self.np_r1[vs] & au).astype(np.int64)
        if u in self.b2:
            counts += np.bitwise_count(self.np_r2[vs] & au).astype(np.int64)
        if u in self.b1:
            counts += np.bitwise_count(self.np_r3[vs] & au).astype(np.int64)
        vside = (counts >= need) & self.np_anch[vs]
        if self.core is None:
            out |= vside
        else:
            for idx in np.nonzero(vside & ~out)[0]:
                out[idx] = out[idx] or self._core_confirm(int(vs[idx]), u)
        return out

    def _pair_py(self, u: int, v: int) -> bool:
        for x, y in ((u, v), (v, u)):
            if not self.anchored[x]:
                continue
            s = self.r1_int[x] & self.arow_int[y]
            cnt = s.bit_count()
            add2 = self.r2_int[x] & self.arow_int[y] if y in self.b2 else 0
            add3 = self.r3_int[x] & self.arow_int[y] if y in self.b1 else 0
            cnt += add2.bit_count() + add3.bit_count()
            if cnt < self.need:
                continue
            if self.core is None:
                return True
            if self._core_confirm(x, y):
                return True
        return False

    def _core_confirm(self, anchored_side: int, other: int) -> bool:
        # the hosted core needs edges, so it must land inside one A zone
        for rzone in (self.r1_int, self.r2_int, self.r3_int):
            s = rzone[anchored_side] & self.arow_int[other]
            if s and s.bit_count() >= self.need and self.aside.core_in(s, self.core):
                return True
        return False


def _finish_log(
    G: Graph,
    h: Graph,
    fam: Family,
    report: ConstructionReport,
    scan: Optional[_MaskScan],
    params: Params,
    t0: float,
) -> Graph:
    """Pass A: exact uncompleted count (mask prefilter + anchored search);
    pass B: lexicographic patch over the uncompleted pairs; then verify."""
    report.edges_before_patch = h.edge_count
    n = G.n
    gbuf = _row_buffer(G)
    hbuf = _row_buffer(h)
    missing = gbuf & ~hbuf
    scratch = MutableGraph.from_graph(h)
    uncompleted: list[tuple[int, int]] = []
    classes = report.uncompleted_by_class
    label = _zone_labeler(scan)
    for u in range(n):
        vs = _bits_above(missing[u], n, u)
        if len(vs) == 0:
            continue
        if scan is not None and scan.in_bulk[u]:
            bulk_mask = scan.np_inbulk[vs]
            bulk_vs = vs[bulk_mask]
            if len(bulk_vs):
                flags = scan.completed_flags(u, bulk_vs)
                vs = np.concatenate([bulk_vs[~flags], vs[~bulk_mask]])
        for v in vs:
            v = int(v)
            scratch.add_edge(u, v)
            hit = copy_through(scratch, u, v, fam)
            scratch.remove_edge(u, v)
            if not hit:
                uncompleted.append((u, v))
                key = label(u, v)
                classes[key] = classes.get(key, 0) + 1
    # the headline count covers the pairs the construction promises to
    # complete: bulk-internal pairs and good-part-to-second-reserve pairs;
    # reserve housekeeping pairs are patched but tallied separately
    report.uncompleted_before_patch = sum(
        c for k, c in classes.items() if k in _CLAIMS_CLASSES or k == "all"
    )
    report.diag["uncompleted_total"] = len(uncompleted)

    work = MutableGraph.from_graph(h)
    added = 0
    for u, v in uncompleted:
        work.add_edge(u, v)
        if copy_through(work, u, v, fam):
            work.remove_edge(u, v)
        else:
            added += 1
    report.patch_added = added
    final = work.freeze()
    report.edges_final = final.edge_count
    verify_and_stamp(
        G, final, fam, report, params.verify_guard, params.verify_samples, params.seed
    )
    report.runtime_ms = (time.perf_counter() - t0) * 1000.0
    report.check_accounting()
    return final


_CLAIMS_CLASSES = frozenset({"b1_b1", "b1_b2", "b2_b2", "a2_b1"})


def _zone_labeler(scan: Optional[_MaskScan]):
    if scan is None:
        return lambda u, v: "all"
    za1, za2, za3 = scan.aside.zone_a1, scan.aside.zone_a2, scan.aside.zone_a3
    pos = scan.aside.apos

    def side(v: int) -> str:
        i = pos.get(v)
        if i is None:
            return "b1" if v in scan.b1 else ("b2" if v in scan.b2 else "b")
        bit = 1 << i
        if bit & za1:
            return "a1"
        if bit & za2:
            return "a2"
        return "a3"

    return lambda u, v: "_".join(sorted((side(u), side(v))))


def _prepatch_freeness(
    h: Graph, fam: Family, report: ConstructionReport, params: Params
) -> None:
    if h.n <= 120:
        ok = is_family_free(h, fam)
    else:
        rng = random.Random(params.seed)
        edges = list(h.edges())
        ok = True
        if edges:
            work = MutableGraph.from_graph(h)
            for _ in range(min(params.verify_samples, 4 * len(edges))):
                u, v = edges[rng.randrange(len(edges))]
                if copy_through(work, u, v, fam):
                    ok = False
                    break
    report.diag["prepatch_free"] = "true" if ok else "FALSE"
    if not ok:
        report.warnings.append("pre-patch graph contains a forbidden copy")


def _tiered_factor(
    G: Graph, b2: list[int], a1_mask: int, t_factor: int, s2: int
) -> tuple[list[frozenset], frozenset]:
    """Clique factor over descending A1-codegree tiers (global vertex ids).

    Low-A1-degree vertices cannot reach the top threshold, so each pass
    re-runs the greedy packing on the leftover with a relaxed threshold;
    every vertex ends up with the best anchor it can support.
    """
    n = G.n
    remaining = list(b2)
    packing: list[frozenset] = []
    thresholds = list(range(t_factor, 0, -2)) + [0]
    index_all = np.zeros(n, dtype=np.int64)
    ar_all = np.zeros(n, dtype=np.uint64)
    for v in b2:
        ar_all[v] = _extract_bits(G.row(v), a1_mask)
    nbytes = (n + 7) // 8
    for t in thresholds:
        if len(remaining) < s2:
            break
        rem_mask = mask_of(remaining)
        rows = {v: 0 for v in remaining}
        for u in remaining:
            grow = G.row(u) & rem_mask
            row_bytes = np.frombuffer(grow.to_bytes(nbytes, "little"), dtype=np.uint8)
            vs = _bits_above(row_bytes, n, u)
            if len(vs) == 0:
                continue
            if t > 0:
                codeg = np.bitwise_count(np.uint64(int(ar_all[u])) & ar_all[vs])
                vs = vs[codeg >= t]
            for v in vs:
                v = int(v)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        tier = Graph(n, [rows.get(v, 0) for v in range(n)])
        tier_pack, _ = ks2_factor(tier, s2)
        rem_set = set(remaining)
        tier_pack = [q for q in tier_pack if q <= rem_set]
        packing.extend(tier_pack)
        covered = set().union(*tier_pack) if tier_pack else set()
        remaining = [v for v in remaining if v not in covered]
    return packing, frozenset(remaining)


def _extract_bits(row: int, mask: int) -> int:
    packed = 0
    i = 0
    m = mask
    while m:
        low = m & -m
        if row & low:
            packed |= 1 << i
        i += 1
        m ^= low
    return packed


def construct_multipartite(
    g: DeferredGnp, s: Sequence[int], params: Params
) -> tuple[Graph, ConstructionReport]:
    s = tuple(s)
    if len(s) < 3:
        raise ApplicabilityError("need at least three parts")
    if any(s[i] > s[i + 1] for i in range(len(s) - 1)):
        raise ParameterError("part sizes must be ascending")
    if s[-1] == 1:
        final, report = construct_star(g, clique(len(s)), params)
        report.construction = "multipartite"
        report.sizes["delegated"] = f"star(K{len(s)})"
        return final, report
    if not (0.5 <= g.p < 1.0) and not params.force:
        raise ParameterError(
            f"p={g.p} outside [0.5, 1); pass force=True to override the guard"
        )
    if params.n_min is not None and g.n < params.n_min:
        raise SizeError(f"n={g.n} below configured n_min={params.n_min}")

    t0 = time.perf_counter()
    ell = len(s)
    s2 = s[1]
    report = ConstructionReport("multipartite", g.n, g.p, params.seed)
    sizes = derive_log_sizes(g.n, g.p, params, s)
    if sizes.gamma > 1.0 / (16.0 * s2) + 1e-12 and not params.force:
        raise ParameterError(f"gamma={sizes.gamma} violates gamma <= 1/(16*s2)")
    report.sizes.update(sizes.as_dict())

    n = g.n
    a1 = list(range(sizes.a1))
    a2 = list(range(sizes.a1, sizes.a1 + sizes.a2))
    a3 = list(range(sizes.a1 + sizes.a2, sizes.a1 + sizes.a2 + sizes.a3))
    b = list(range(sizes.a1 + sizes.a2 + sizes.a3, n))

    # the good/bad split and the matching machinery must commit before any
    # bulk-internal randomness is exposed
    g.expose_block(a1, b)
    a1_mask = mask_of(a1)
    lo, hi = sizes.interval
    b1 = [v for v in b if lo <= (g._value[v] & a1_mask).bit_count() <= hi]
    b2_set = set(b) - set(b1)

    hb1, b1_report = build_H_B1(g, b1, a1, s[0], s2, params)
    report.unmatched_per_round = b1_report.unmatched_per_round
    report.sizes["threshold_pairs"] = b1_report.sizes.get("threshold_pairs", 0)

    # peel: only full-degree vertices stay useful anchors in the good part
    surviving = set(b1)
    changed = True
    while changed:
        changed = False
        for v in list(surviving):
            if sum(1 for w in hb1.neighbors(v) if w in surviving) < s2 - 1:
                surviving.discard(v)
                changed = True
    report.moved_to_b2 = len(b1) - len(surviving)
    b2_set.update(v for v in b1 if v not in surviving)
    b1 = sorted(surviving)
    b2 = sorted(b2_set)
    report.sizes["b1"] = len(b1)
    report.sizes["b2"] = len(b2)

    G = g.to_graph()

    work = MutableGraph(n)
    b_mask = mask_of(b)
    for v in a1:
        for u in bits_of(G.row(v) & b_mask):
            work.add_edge(v, u)
    report.add_phase("a1_b", work.edge_total())

    aside = _ASide(a1 + a2 + a3)
    aside.zone_a1 = mask_of(range(len(a1)))
    aside.zone_a2 = mask_of(range(len(a1), len(a1) + len(a2)))

    forbidden = Family.of(clique(ell), complete_multipartite([s[0]] * (ell - 1)))
    need, core = _completion_need(s)
    target = pattern_from_graph(core, "completion-core") if core is not None else None
    report.sizes["completion_need"] = need

    _build_a_zone(G, a1, forbidden, target, params.seed, aside, report, "h_a1")
    report.add_phase("h_a1", _add_zone_edges(work, aside, a1))

    before = work.edge_total()
    b1_keep = mask_of(b1)
    for u, v in hb1.edges():
        if (b1_keep >> u) & 1 and (b1_keep >> v) & 1:
            work.add_edge(u, v)
    report.add_phase("h_b1", work.edge_total() - before)

    before = work.edge_total()
    b2_mask = mask_of(b2)
    for v in a2:
        for u in bits_of(G.row(v) & b2_mask):
            work.add_edge(v, u)
    report.add_phase("a2_b2", work.edge_total() - before)

    _build_a_zone(G, a2, forbidden, target, params.seed + 1, aside, report, "h_a2")
    report.add_phase("h_a2", _add_zone_edges(work, aside, a2))

    before = work.edge_total()
    t_factor = max(need + 1, math.ceil(len(a1) * g.p * g.p) + 3)
    report.sizes["factor_codegree"] = t_factor
    cliques, leftover = _tiered_factor(G, b2, a1_mask, t_factor, s2)
    anchor_of: dict[int, frozenset] = {}
    for q in cliques:
        for x in q:
            anchor_of[x] = q - {x}
        for x in q:
            for y in q:
                if x < y:
                    work.add_edge(x, y)
    report.add_phase("h_b2_factor", work.edge_total() - before)
    report.sizes["factor_cliques"] = len(cliques)
    report.sizes["factor_leftover"] = len(leftover)

    before = work.edge_total()
    for v in a3:
        for u in bits_of(G.row(v) & b1_keep):
            work.add_edge(v, u)
    report.add_phase("a3_b1", work.edge_total() - before)

    k = _a3_wiring(G, a2, a3, forbidden, target, params, aside, report, work)
    report.sizes["k"] = k

    for v in b1:
        anchor_of[v] = frozenset(w for w in hb1.neighbors(v) if (b1_keep >> w) & 1)

    h = work.freeze()
    fam = Family.of(complete_multipartite(s))
    _prepatch_freeness(h, fam, report, params)

    scan = _MaskScan(
        G, aside, anchor_of, s2 - 1, need, core, frozenset(b1), frozenset(b2)
    )
    final = _finish_log(G, h, fam, report, scan, params, t0)
    return final, report


def _a3_wiring(
    G: Graph,
    a2: list[int],
    a3: list[int],
    forbidden: Family,
    target: Optional[Pattern],
    params: Params,
    aside: _ASide,
    report: ConstructionReport,
    work: MutableGraph,
) -> int:
    """Colour the second reserve, split the third into 2k parts, keep the k
    best dense-free builds, wire each kept part to its colour class."""
    if not a2 or not a3:
        return 0
    sub2, order2 = G.induced(a2)
    classes = [[order2[i] for i in cls] for cls in greedy_color_classes(sub2)]
    k = max(1, len(classes))
    parts: list[list[int]] = [[] for _ in range(2 * k)]
    for i, v in enumerate(a3):
        parts[i % (2 * k)].append(v)
    before = work.edge_total()
    scored: list[tuple[float, int]] = []
    for idx, part in enumerate(parts):
        if not part:
            continue
        score = _build_a_zone(
            G, part, forbidden, target, params.seed + 2 + idx, aside, report, f"h_a3_{idx}"
        )
        _add_zone_edges(work, aside, part)
        scored.append((1.0 if score is None else score, idx))
    report.add_phase("h_a3", work.edge_total() - before)
    scored.sort(key=lambda t: (-t[0], t[1]))
    selected = [parts[idx] for _, idx in scored[:k]]
    before = work.edge_total()
    sel_mask_global = 0
    for cls, part in zip(classes, selected):
        part_mask = mask_of(part)
        sel_mask_global |= part_mask
        for v in cls:
            for u in bits_of(G.row(v) & part_mask):
                work.add_edge(v, u)
    report.add_phase("a2i_a3i", work.edge_total() - before)
    zone = 0
    for v in bits_of(sel_mask_global):
        zone |= 1 << aside.apos[v]
    aside.zone_a3 = zone
    report.sizes["a3_selected"] = len(selected)
    return k


def construct_star(
    g: DeferredGnp, f: Pattern, params: Params
) -> tuple[Graph, ConstructionReport]:
    """Skeleton of the multipartite construction with an internally empty
    bulk: completion rides on joint A-side neighborhoods hosting the
    pattern minus its witness edge."""
    wit = detect_star(f)
    if wit is None:
        raise ApplicabilityError(f"{f.name}: no witness edge")
    if params.n_min is not None and g.n < params.n_min:
        raise SizeError(f"n={g.n} below configured n_min={params.n_min}")
    t0 = time.perf_counter()
    report = ConstructionReport("star", g.n, g.p, params.seed)
    report.sizes["witness_edge"] = f"{wit.u}-{wit.v}"

    remainder, _ = f.graph.induced([x for x in range(f.n) if x not in (wit.u, wit.v)])
    core = strip_isolated(remainder)
    core_graph = core if core.edge_count else None
    need = f.n - 2
    report.sizes["completion_need"] = need

    forbidden_pats = []
    for ind in independent_sets(f.graph):
        keep = [x for x in range(f.n) if x not in ind]
        sub, _ = f.graph.induced(keep)
        sub = strip_isolated(sub)
        if sub.edge_count:
            forbidden_pats.append(
                pattern_from_graph(sub, f"{f.name}-rem{len(forbidden_pats)}")
            )
    forbidden = Family.of(*forbidden_pats)
    target = (
        pattern_from_graph(core_graph, "witness-core") if core_graph is not None else None
    )

    sizes = derive_log_sizes(g.n, g.p, params, (1, 1, max(1, need)))
    report.sizes.update(sizes.as_dict())

    n = g.n
    a1 = list(range(sizes.a1))
    a2 = list(range(sizes.a1, sizes.a1 + sizes.a2))
    a3 = list(range(sizes.a1 + sizes.a2, sizes.a1 + sizes.a2 + sizes.a3))
    b = list(range(sizes.a1 + sizes.a2 + sizes.a3, n))

    G = g.to_graph()
    a1_mask = mask_of(a1)
    lo, hi = sizes.interval
    b1 = [v for v in b if lo <= (G.row(v) & a1_mask).bit_count() <= hi]
    b2 = sorted(set(b) - set(b1))
    report.sizes["b1"] = len(b1)
    report.sizes["b2"] = len(b2)

    work = MutableGraph(n)
    b_mask = mask_of(b)
    for v in a1:
        for u in bits_of(G.row(v) & b_mask):
            work.add_edge(v, u)
    report.add_phase("a1_b", work.edge_total())

    aside = _ASide(a1 + a2 + a3)
    aside.zone_a1 = mask_of(range(len(a1)))
    aside.zone_a2 = mask_of(range(len(a1), len(a1) + len(a2)))

    _build_a_zone(G, a1, forbidden, target, params.seed, aside, report, "h_a1")
    report.add_phase("h_a1", _add_zone_edges(work, aside, a1))

    before = work.edge_total()
    b2_mask = mask_of(b2)
    for v in a2:
        for u in bits_of(G.row(v) & b2_mask):
            work.add_edge(v, u)
    report.add_phase("a2_b2", work.edge_total() - before)

    _build_a_zone(G, a2, forbidden, target, params.seed + 1, aside, report, "h_a2")
    report.add_phase("h_a2", _add_zone_edges(work, aside, a2))

    before = work.edge_total()
    b1_mask = mask_of(b1)
    for v in a3:
        for u in bits_of(G.row(v) & b1_mask):
            work.add_edge(v, u)
    report.add_phase("a3_b1", work.edge_total() - before)

    k = _a3_wiring(G, a2, a3, forbidden, target, params, aside, report, work)
    report.sizes["k"] = k

    h = work.freeze()
    fam = Family.of(f)
    _prepatch_freeness(h, fam, report, params)

    anchor_of = {v: frozenset() for v in b}
    scan = _MaskScan(
        G, aside, anchor_of, 0, need, core_graph, frozenset(b1), frozenset(b2)
    )
    final = _finish_log(G, h, fam, report, scan, params, t0)
    return final, report

"""Diagnostics for the dense-regime machinery: the auxiliary intersection
graph on packed neighborhoods, ball covering, independence probing, and the
neighborhood-fiber regime classifier.

Diagnostics never gate constructions; they emit metrics and warnings.
Finite-size violations of the asymptotic events are data, not bugs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ._bits import bits_of, mask_of
from .constructions.params import (
    Params,
    ball_cover_threshold,
    codegree_edge_threshold,
    log_rho,
)
from .errors import ParameterError
from .graphs import Graph


@dataclass(frozen=True)
class HammingPoint:
    """A subset of the core with size inside the good degree window."""

    members: frozenset

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class PhiClasses:
    """Partition of vertices by equal core-neighborhood."""

    classes: list[frozenset]
    histogram: dict[int, int]
    regime: str  # bounded | polynomial | boundary


def points_from_vertices(
    g: Graph, vertices: Sequence[int], a1: Sequence[int], interval: tuple[float, float]
) -> list[HammingPoint]:
    """phi-images of the given vertices whose size lands in the window."""
    a1_mask = mask_of(a1)
    lo, hi = interval
    out = []
    for v in vertices:
        nb = g.row(v) & a1_mask
        if lo <= nb.bit_count() <= hi:
            out.append(HammingPoint(frozenset(bits_of(nb))))
    return out


def build_gw_sample(
    g: Graph, b1: Sequence[int], a1: Sequence[int], sample: int, seed: int,
    eps: float = 0.1, gamma: float = 0.05,
) -> tuple[Graph, list[HammingPoint]]:
    """Intersection graph on the phi-images of sampled b1 vertices.

    Distinct points are adjacent when their intersection reaches the edge
    threshold; this mirrors the pair graph the matching machinery uses.
    """
    if sample > len(b1):
        raise ParameterError("sample exceeds the candidate vertex pool")
    rng = random.Random(seed)
    chosen = sorted(rng.sample(list(b1), sample))
    a1_mask = mask_of(a1)
    images = []
    seen = set()
    for v in chosen:
        m = g.row(v) & a1_mask
        if m not in seen:
            seen.add(m)
            images.append(m)
    thr = codegree_edge_threshold(g.n, _implied_p(g), eps, gamma)
    k = len(images)
    rows = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if (images[i] & images[j]).bit_count() >= thr:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    pts = [HammingPoint(frozenset(bits_of(m))) for m in images]
    return Graph(k, rows), pts


def _implied_p(g: Graph) -> float:
    possible = g.n * (g.n - 1) / 2
    return min(max(g.edge_count / possible, 1e-9), 1 - 1e-9) if possible else 0.5


@dataclass
class BallCoverReport:
    points: int
    covered: int
    cover_sets: list[list[int]]  # per covering vertex: indices of covered points
    clique_checks: int
    clique_failures: int
    edge_stat: float  # scaled induced-edge-count statistic
    edge_bound: float  # 0.25 * n * log_rho(n), scaled to the sample
    ball_threshold: float
    edge_threshold: float
    warnings: list = field(default_factory=list)

    @property
    def coverage(self) -> float:
        return self.covered / self.points if self.points else 0.0


def ball_cover_probe(
    g: Graph,
    a1: Sequence[int],
    bprime: Sequence[int],
    points: Sequence[HammingPoint],
    params: Params,
    gamma: Optional[float] = None,
) -> BallCoverReport:
    """Covering-ball statistics over the given points.

    A vertex of bprime covers a point when its in-point degree reaches the
    ball threshold. Point groups covered by one vertex are checked to be
    cliques of the intersection graph (the containment the threshold
    ordering implies), and the induced-edge statistic of the covered set is
    compared against the quarter bound, scaled from sample to host.
    """
    p = _implied_p(g)
    n = g.n
    gam = params.resolved_gamma(2) if gamma is None else gamma
    t_ball = ball_cover_threshold(n, p, params.eps, gam)
    t_edge = codegree_edge_threshold(n, p, params.eps, gam)
    if not t_ball > t_edge:
        raise ParameterError("ball threshold must exceed edge threshold")
    masks = [mask_of(pt.members) for pt in points]
    cover_sets: dict[int, list[int]] = {}
    covered_idx = set()
    for y in bprime:
        row = g.row(y)
        mine = []
        for i, m in enumerate(masks):
            if (row & m).bit_count() >= t_ball:
                mine.append(i)
                covered_idx.add(i)
        if mine:
            cover_sets[y] = mine
    checks = 0
    failures = 0
    for y, group in cover_sets.items():
        for ii in range(len(group)):
            for jj in range(ii + 1, len(group)):
                checks += 1
                inter = (masks[group[ii]] & masks[group[jj]]).bit_count()
                if inter < t_edge:
                    failures += 1
    # induced-edge statistic over the covered points, scaled to the host
    cov = sorted(covered_idx)
    edges = 0
    for ii in range(len(cov)):
        for jj in range(ii + 1, len(cov)):
            if (masks[cov[ii]] & masks[cov[jj]]).bit_count() >= t_edge:
                edges += 1
    m_host = n / max(math.log(n), 1.0)
    scale = (m_host / len(points)) ** 2 if points else 0.0
    report = BallCoverReport(
        points=len(points),
        covered=len(covered_idx),
        cover_sets=[sorted(v) for v in cover_sets.values()],
        clique_checks=checks,
        clique_failures=failures,
        edge_stat=edges * scale,
        edge_bound=0.25 * n * log_rho(n, p),
        ball_threshold=t_ball,
        edge_threshold=t_edge,
    )
    if failures:
        report.warnings.append(f"{failures}/{checks} co-covered pairs below edge threshold")
    return report


def independence_probe(
    gamma_i: Graph, target: int, effort: int, seed: int
) -> frozenset:
    """Randomized greedy plus swap local search for a large independent set.

    Finding a set of size >= target is a red flag the caller reports; the
    probe can never prove the bound, only fail to refute it.
    """
    rng = random.Random(seed)
    n = gamma_i.n
    best: frozenset = frozenset()
    verts = list(range(n))
    swap_budget = 4 * n
    for attempt in range(max(1, effort)):
        rng.shuffle(verts)
        chosen = 0
        chosen_list = []
        for v in verts:
            if not (gamma_i.row(v) & chosen):
                chosen |= 1 << v
                chosen_list.append(v)
        # bounded 1-out-2-in local search
        improved, budget = True, swap_budget
        while improved and budget > 0:
            improved = False
            for v in list(chosen_list):
                budget -= 1
                if budget <= 0:
                    break
                without = chosen & ~(1 << v)
                cands = [
                    u
                    for u in range(n)
                    if u != v
                    and not (chosen >> u) & 1
                    and not (gamma_i.row(u) & without)
                ]
                pair = None
                for i in range(len(cands)):
                    row_i = gamma_i.row(cands[i])
                    for j in range(i + 1, len(cands)):
                        if not (row_i >> cands[j]) & 1:
                            pair = (cands[i], cands[j])
                            break
                    if pair:
                        break
                if pair:
                    chosen = without | (1 << pair[0]) | (1 << pair[1])
                    chosen_list = [x for x in chosen_list if x != v]
                    chosen_list.extend(pair)
                    improved = True
                    break
        if len(chosen_list) > len(best):
            best = frozenset(chosen_list)
        if len(best) >= target:
            break
    return best


def phi_classes(g: Graph, b1: Sequence[int], a1: Sequence[int]) -> PhiClasses:
    """Exact partition of b1 by equality of core neighborhoods."""
    a1_mask = mask_of(a1)
    fibers: dict[int, list[int]] = {}
    for v in b1:
        fibers.setdefault(g.row(v) & a1_mask, []).append(v)
    classes = [frozenset(vs) for vs in fibers.values()]
    hist: dict[int, int] = {}
    for c in classes:
        hist[len(c)] = hist.get(len(c), 0) + 1
    sizes = sorted(hist)
    if not sizes:
        regime = "bounded"
    elif sizes[-1] <= max(4, int(2 * math.log(max(g.n, 3))) // 2):
        regime = "bounded"
    elif sizes[0] >= max(2, int(g.n ** 0.2)):
        regime = "polynomial"
    else:
        regime = "boundary"
    return PhiClasses(classes, hist, regime)


def regime_score(p: float) -> float:
    """2 - log_{1-p}(p) - 1/p; sign separates the fiber-size regimes."""
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie in (0, 1)")
    return 2.0 - math.log(p) / math.log(1.0 - p) - 1.0 / p


def classify_regime(p: float) -> str:
    """bounded | polynomial | boundary by the sign of the regime score."""
    f = regime_score(p)
    if abs(f) < 1e-9:
        return "boundary"
    return "bounded" if f < 0 else "polynomial"

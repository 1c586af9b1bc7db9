import math

import pytest

from satlab.constructions import Params, degree_interval, log_rho
from satlab.errors import ParameterError
from satlab.gnp import gen_gnp
from satlab.graphs import Graph
from satlab.hamming import (
    BallCoverReport,
    HammingPoint,
    ball_cover_probe,
    build_gw_sample,
    classify_regime,
    independence_probe,
    phi_classes,
    points_from_vertices,
    regime_score,
)


class TestRegime:
    def test_half_is_bounded(self):
        # log_{0.5}(0.5) = 1 so the score is exactly -1
        assert abs(regime_score(0.5) + 1.0) < 1e-12
        assert classify_regime(0.5) == "bounded"

    def test_point_eight_polynomial(self):
        assert abs(regime_score(0.8) - 0.6114) < 1e-3
        assert classify_regime(0.8) == "polynomial"

    def test_root_localised(self):
        assert classify_regime(0.63) == "bounded"
        assert classify_regime(0.65) == "polynomial"

    def test_monotone_scan(self):
        verdicts = [classify_regime(p / 100) for p in range(50, 100)]
        seen_poly = False
        for v in verdicts:
            if v == "polynomial":
                seen_poly = True
            if seen_poly:
                assert v != "bounded"

    def test_rejects_degenerate_p(self):
        with pytest.raises(ParameterError):
            classify_regime(0.0)


class TestPhiClasses:
    def test_injective_at_scale(self):
        g = gen_gnp(4096, 0.5, 3)
        a1 = list(range(24))
        pc = phi_classes(g, range(24, 4096), a1)
        assert all(len(c) == 1 for c in pc.classes)
        assert pc.regime == "bounded"

    def test_identical_rows_share_class(self):
        g = Graph.from_edges(5, [(0, 3), (0, 4), (1, 3), (1, 4)])
        pc = phi_classes(g, [3, 4], [0, 1, 2])
        assert len(pc.classes) == 1  # both see {0,1}

    def test_empty_core_single_class(self):
        g = gen_gnp(30, 0.5, 1)
        pc = phi_classes(g, range(30), [])
        assert len(pc.classes) == 1

    def test_classes_are_fibers(self):
        g = gen_gnp(64, 0.5, 9)
        a1 = list(range(6))
        pc = phi_classes(g, range(6, 64), a1)
        from satlab._bits import mask_of

        a1m = mask_of(a1)
        for cls in pc.classes:
            rows = {g.row(v) & a1m for v in cls}
            assert len(rows) == 1


class TestGwSample:
    def test_mirrors_threshold_pairs(self):
        g = gen_gnp(512, 0.5, 2)
        a1 = list(range(26))
        gw, pts = build_gw_sample(g, list(range(26, 512)), a1, 200, 7, eps=0.1, gamma=0.45)
        assert gw.n == len(pts)
        # sanity: adjacency iff intersection above threshold
        from satlab.constructions.params import codegree_edge_threshold

        thr = codegree_edge_threshold(512, g.edge_count / (512 * 511 / 2), 0.1, 0.45)
        for i in range(min(20, gw.n)):
            for j in range(i + 1, min(20, gw.n)):
                inter = len(pts[i].members & pts[j].members)
                assert gw.has_edge(i, j) == (inter >= thr)


class TestIndependenceProbe:
    def test_complete_graph(self):
        assert len(independence_probe(Graph.complete(8), 4, 10, 1)) == 1

    def test_empty_graph(self):
        assert len(independence_probe(Graph.empty(9), 100, 3, 1)) == 9

    def test_early_exit_on_target(self):
        best = independence_probe(Graph.empty(50), 10, 1000, 1)
        assert len(best) >= 10


class TestBallCover:
    def _setup(self, n=512, seed=3, gamma_window=0.45):
        g = gen_gnp(n, 0.5, seed)
        a1 = list(range(30))
        window = degree_interval(n, 0.5, 0.1, gamma_window)
        candidates = list(range(30, n))
        pts = points_from_vertices(g, candidates, a1, window)
        carriers = [
            v
            for v in candidates
            if window[0] <= sum(1 for a in a1 if g.has_edge(v, a)) <= window[1]
        ]
        return g, a1, pts, carriers

    def test_empty_bprime_zero_coverage(self):
        g, a1, pts, carriers = self._setup()
        rep = ball_cover_probe(g, a1, [], pts[:40], Params(eps=0.1), gamma=5.0)
        assert rep.coverage == 0.0

    def test_self_coverage(self):
        g, a1, pts, carriers = self._setup()
        rep = ball_cover_probe(
            g, a1, carriers[:40], pts[:40], Params(eps=0.1), gamma=5.0
        )
        # each point's own vertex is in bprime, and its in-point degree is
        # the full point size, which clears the ball threshold
        assert rep.coverage == 1.0

    def test_threshold_ordering_enforced(self):
        g, a1, pts, carriers = self._setup()
        with pytest.raises(ParameterError):
            ball_cover_probe(g, a1, carriers[:5], pts[:5], Params(eps=0.1), gamma=-1.0)

    def test_clique_property_with_good_carriers(self):
        g, a1, pts, carriers = self._setup()
        rep = ball_cover_probe(g, a1, carriers[:12], pts[:60], Params(eps=0.1), gamma=5.0)
        assert rep.clique_failures == 0

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satlab.constructions.finish import count_and_patch
from satlab.constructions.params import ConstructionReport
from satlab.constructions.routes import make_fast_route
from satlab.embed import Family, clique, cycle, is_family_free, star
from satlab.errors import ContainmentError, ParameterError, SizeError
from satlab.gnp import gen_gnp
from satlab.graphs import Graph
from satlab.saturation import (
    exact_sat,
    greedy_saturate,
    is_saturated,
    patch_up,
    sampled_saturation_check,
)

K3 = Family.of(clique(3))


class TestIsSaturated:
    def test_star_in_k4(self):
        host = Graph.complete(4)
        h = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert is_saturated(host, h, K3).saturated

    def test_free_but_not_maximal(self):
        v = is_saturated(Graph.complete(3), Graph.empty(3), K3)
        assert v.free and not v.maximal and v.first_violation == (0, 1)

    def test_not_free(self):
        v = is_saturated(Graph.complete(4), Graph.complete(4), K3)
        assert not v.free

    def test_containment_enforced(self):
        host = Graph.empty(4)
        sub = Graph.from_edges(4, [(0, 1)])
        with pytest.raises(ContainmentError):
            is_saturated(host, sub, K3)

    def test_restatement_every_missing_edge_completes(self):
        host = gen_gnp(24, 0.5, 3)
        h = greedy_saturate(host, K3, 3)
        from satlab.embed import completes

        for u in range(24):
            for v in range(u + 1, 24):
                if host.has_edge(u, v) and not h.has_edge(u, v):
                    assert completes(h, (u, v), K3)


class TestGreedy:
    def test_k4_star_or_cycle(self):
        out = greedy_saturate(Graph.complete(4), K3, 1)
        assert out.edge_count in (3, 4)

    def test_empty_host(self):
        assert greedy_saturate(Graph.empty(5), K3, 0).edge_count == 0

    def test_triangle_free_host_kept_whole(self):
        c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert greedy_saturate(c5, K3, 5) == c5

    @pytest.mark.parametrize("fam", [K3, Family.of(cycle(4)), Family.of(clique(4)), Family.of(star(3))],
                             ids=["K3", "C4", "K4", "S3"])
    def test_output_always_saturated(self, fam):
        for seed in range(8):
            g = gen_gnp(30, 0.4, seed)
            out = greedy_saturate(g, fam, seed)
            assert is_saturated(g, out, fam).saturated, seed


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_greedy_saturated_property(seed):
    fams = [K3, Family.of(cycle(4)), Family.of(clique(4)), Family.of(star(3))]
    g = gen_gnp(4 + seed % 37, 0.45, seed)
    fam = fams[seed % 4]
    out = greedy_saturate(g, fam, seed)
    assert is_saturated(g, out, fam).saturated


class TestPatchUp:
    def test_already_saturated_adds_nothing(self):
        host = Graph.complete(4)
        h = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        out, added = patch_up(host, h, K3)
        assert added == 0 and out == h

    def test_single_edge_start(self):
        host = Graph.complete(4)
        out, added = patch_up(host, Graph.from_edges(4, [(0, 1)]), K3)
        assert is_saturated(host, out, K3).saturated
        assert out.edge_count <= 4

    def test_c4_host_all_added(self):
        host = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        out, added = patch_up(host, Graph.empty(4), K3)
        assert out == host and added == 4

    def test_requires_free_start(self):
        with pytest.raises(ParameterError):
            patch_up(Graph.complete(4), Graph.complete(4), K3)

    def test_idempotent(self):
        for seed in range(5):
            g = gen_gnp(20, 0.5, seed)
            out, _ = patch_up(g, Graph.empty(20), K3)
            again, added = patch_up(g, out, K3)
            assert added == 0 and again == out

    def test_count_and_patch_equivalence(self):
        # the two-pass finisher must replicate plain lexicographic patch_up
        for seed in range(6):
            g = gen_gnp(22, 0.5, seed)
            for fam in (K3, Family.of(cycle(4))):
                h = Graph.from_edges(22, list(g.edges())[:6])
                if not is_family_free(h, fam):
                    continue
                want, wadded = patch_up(g, h, fam)
                rep = ConstructionReport("t", 22, 0.5, seed)
                got = count_and_patch(g, h, fam, rep, make_fast_route(h.rows(), fam))
                assert got == want and rep.patch_added == wadded


class TestSampledCheck:
    def test_agrees_on_saturated_instance(self):
        g = gen_gnp(40, 0.5, 2)
        h = greedy_saturate(g, K3, 2)
        assert sampled_saturation_check(g, h, K3, 500, 1).saturated

    def test_detects_missing_completion(self):
        g = Graph.complete(3)
        h = Graph.empty(3)
        v = sampled_saturation_check(g, h, K3, 50, 1)
        assert not v.saturated


class TestExactSat:
    def test_k4_triangle(self):
        assert exact_sat(Graph.complete(4), clique(3)) == 3

    def test_star_values(self):
        for n in (4, 5, 6):
            assert exact_sat(Graph.complete(n), clique(3)) == n - 1

    def test_k5_k4_closed_form(self):
        # classical 2n-3 for K4-saturation
        assert exact_sat(Graph.complete(5), clique(4)) == 7

    def test_guard(self):
        with pytest.raises(SizeError):
            exact_sat(Graph.complete(8), clique(3))

    def test_bounded_by_greedy(self):
        for seed in range(4):
            g = gen_gnp(7, 0.7, seed)
            if g.edge_count > 22 or g.edge_count == 0:
                continue
            opt = exact_sat(g, clique(3))
            grd = greedy_saturate(g, K3, seed).edge_count
            assert opt <= grd

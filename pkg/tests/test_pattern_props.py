import pytest

from satlab.embed import (
    clique,
    complete_multipartite,
    cycle,
    path,
    pattern_from_graph,
    star,
    Family,
)
from satlab.graphs import Graph
from satlab.pattern_props import (
    blocks,
    chromatic_number,
    detect_ntriangle,
    detect_star,
    family_min_bipartite_side,
    independent_sets,
    is_degenerate,
    optimal_colourings,
    proper_two_colourings,
    two_vertex_connected_subgraphs,
)

from .helpers import naive_chromatic, petersen


def bowtie() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


CATALOG = [
    path(4), path(5), path(6),
    cycle(4), cycle(5), cycle(6), cycle(7),
    clique(3), clique(4), clique(5),
    star(3), star(4),
    complete_multipartite([1, 1, 2]),
    complete_multipartite([1, 2, 2]),
    complete_multipartite([2, 3]),
    pattern_from_graph(bowtie(), "bowtie"),
]


class TestChromatic:
    def test_odd_cycle(self):
        assert chromatic_number(cycle(5)) == 3

    def test_clique(self):
        assert chromatic_number(clique(4)) == 4

    def test_petersen(self):
        assert chromatic_number(petersen()) == 3

    def test_matches_naive_on_catalog(self):
        for pat in CATALOG:
            assert chromatic_number(pat) == naive_chromatic(pat.graph), pat.name

    def test_relabel_invariance(self):
        g = cycle(5).graph
        relabeled = Graph.from_edges(5, [(4, 3), (3, 2), (2, 1), (1, 0), (0, 4)])
        assert chromatic_number(g) == chromatic_number(relabeled)


class TestOptimalColourings:
    def test_triangle(self):
        w = optimal_colourings(clique(3))
        assert w.chi == 3 and len(w.partitions) == 1 and w.max_class_size == 1

    def test_c4_unique_bipartition(self):
        w = optimal_colourings(cycle(4))
        assert w.chi == 2 and len(w.partitions) == 1 and w.max_class_size == 2

    def test_c5_five_rotations(self):
        w = optimal_colourings(cycle(5))
        assert len(w.partitions) == 5 and w.max_class_size == 2

    def test_classes_are_independent(self):
        for pat in CATALOG[:8]:
            w = optimal_colourings(pat)
            for partition in w.partitions:
                assert len(partition) == w.chi
                for cls in partition:
                    for u in cls:
                        for v in cls:
                            if u != v:
                                assert not pat.graph.has_edge(u, v)


class TestNtriangleDetector:
    @pytest.mark.parametrize(
        "pat",
        [path(4), cycle(4), cycle(5), cycle(6), cycle(7), cycle(8),
         complete_multipartite([2, 3])],
        ids=lambda p: p.name,
    )
    def test_positive(self, pat):
        wit = detect_ntriangle(pat)
        assert wit is not None
        # the witness must be literal: all neighbors inside the class
        for u in pat.graph.neighbors(wit.v):
            assert u in wit.i_max

    @pytest.mark.parametrize(
        "pat", [clique(3), clique(4), complete_multipartite([1, 2, 2])],
        ids=lambda p: p.name,
    )
    def test_negative(self, pat):
        assert detect_ntriangle(pat) is None

    def test_c5_witness_values(self):
        wit = detect_ntriangle(cycle(5))
        assert sorted(wit.i_max) == [0, 2] and wit.v == 1


class TestBlocks:
    def test_bowtie_two_triangles(self):
        bl = blocks(bowtie())
        assert len(bl) == 2 and all(len(b) == 3 for b in bl)

    def test_tree_all_bridges(self):
        tree = Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
        bl = blocks(tree)
        assert len(bl) == 4 and all(len(b) == 1 for b in bl)

    def test_complete_single_block(self):
        assert len(blocks(Graph.complete(4))) == 1

    def test_blocks_partition_edges(self):
        for pat in CATALOG:
            bl = blocks(pat.graph)
            seen = set()
            for b in bl:
                assert not (b & seen)
                seen |= b
            assert len(seen) == pat.graph.edge_count


class TestDegeneracy:
    def test_triangle_not_in_edge(self):
        assert not is_degenerate(clique(3).graph, clique(2))

    def test_trees_edge_degenerate(self):
        tree = Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
        assert is_degenerate(tree, clique(2))

    def test_empty_graph_degenerate(self):
        assert is_degenerate(Graph.empty(4), clique(2))


class TestStarDetector:
    @pytest.mark.parametrize(
        "pat", [clique(3), clique(4), complete_multipartite([1, 1, 2])],
        ids=lambda p: p.name,
    )
    def test_positive(self, pat):
        assert detect_star(pat) is not None

    @pytest.mark.parametrize(
        "pat", [cycle(4), complete_multipartite([1, 2, 2])], ids=lambda p: p.name
    )
    def test_negative(self, pat):
        assert detect_star(pat) is None

    def test_naive_agreement_up_to_seven_vertices(self):
        for pat in CATALOG:
            if pat.n <= 7:
                fast = detect_star(pat)
                slow = detect_star(pat, naive=True)
                assert (fast is None) == (slow is None), pat.name

    def test_two_vertex_connected_includes_single_edges(self):
        subs = two_vertex_connected_subgraphs(path(3).graph)
        assert any(s.n == 2 and s.edge_count == 1 for s in subs)


class TestBipartiteSide:
    def test_c4(self):
        side, pat = family_min_bipartite_side(Family.of(cycle(4)))
        assert side == 2

    def test_star_is_one(self):
        side, _ = family_min_bipartite_side(Family.of(star(3)))
        assert side == 1

    def test_mixed_family_skips_nonbipartite(self):
        side, pat = family_min_bipartite_side(
            Family.of(clique(3), complete_multipartite([2, 3]))
        )
        assert side == 2 and pat.name == "M:2,3"

    def test_no_bipartite_member(self):
        assert family_min_bipartite_side(Family.of(clique(3))) is None

    def test_disconnected_two_colourings(self):
        # two disjoint edges: component flips give two distinct bipartitions
        two_paths = Graph.from_edges(4, [(0, 1), (2, 3)])
        cols = proper_two_colourings(two_paths)
        assert len(cols) == 2
        assert all(min(len(a), len(b)) == 2 for a, b in cols)


class TestIndependentSets:
    def test_counts_on_triangle(self):
        sets = independent_sets(clique(3).graph)
        # empty set + three singletons
        assert len(sets) == 4

    def test_includes_empty(self):
        assert frozenset() in independent_sets(cycle(4).graph)


class TestBlockCutForest:
    def test_contracting_blocks_yields_forest(self):
        # block-cut incidence graph: nodes = blocks + cut vertices;
        # acyclic iff edges = nodes - components
        for pat in CATALOG:
            g = pat.graph
            bl = blocks(g)
            vertex_blocks = {}
            for i, b in enumerate(bl):
                for e in b:
                    for v in e:
                        vertex_blocks.setdefault(v, set()).add(i)
            cuts = [v for v, bs in vertex_blocks.items() if len(bs) >= 2]
            nodes = len(bl) + len(cuts)
            edges = sum(len(vertex_blocks[v]) for v in cuts)
            components = _count_components_of_incidence(bl, cuts, vertex_blocks)
            assert edges == nodes - components, pat.name


def _count_components_of_incidence(bl, cuts, vertex_blocks):
    parent = list(range(len(bl) + len(cuts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cut_index = {v: len(bl) + i for i, v in enumerate(cuts)}
    for v in cuts:
        for b in vertex_blocks[v]:
            ra, rb = find(cut_index[v]), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(x) for x in range(len(bl) + len(cuts))})

import pytest
from hypothesis import given

from conftest import graphs
from graphgeom import generators as gen
from graphgeom.graph import Graph, GraphError, HypothesisViolation, is_k_connected
from graphgeom.structure import (
    EarDecomposition,
    bridges_of_cycle,
    classify_bridge_pair,
    cycle_edges,
    ear_decomposition,
    marked_s_decomposition,
    verify_ear_decomposition,
)


class TestBridges:
    def test_k4_triangle(self):
        (b,) = bridges_of_cycle(gen.complete(4), [0, 1, 2])
        assert b.internal_vertices == {3} and b.attachments == {0, 1, 2} and b.k == 3

    def test_c6_chord(self):
        g = gen.cycle(6).add_edges([(0, 3)])
        (b,) = bridges_of_cycle(g, list(range(6)))
        assert b.trivial and b.attachments == {0, 3}

    def test_petersen_outer_cycle(self):
        (b,) = bridges_of_cycle(gen.petersen(), [0, 1, 2, 3, 4])
        assert b.internal_vertices == set(range(5, 10)) and b.k == 5

    def test_not_a_cycle(self):
        with pytest.raises(GraphError):
            bridges_of_cycle(gen.petersen(), [0, 1, 2, 3, 5])

    @given(graphs(min_n=3, max_n=8))
    def test_partition_of_remaining_edges(self, g):
        g = g.add_edges([(0, 1), (1, 2), (0, 2)])
        c = [0, 1, 2]
        bs = bridges_of_cycle(g, c)
        seen = set()
        for b in bs:
            assert not (b.edges & seen)
            seen |= b.edges
            assert not (b.internal_vertices & set(c))
        assert seen == set(g.edges) - cycle_edges(c)
        for i, a in enumerate(bs):
            for b in bs[i + 1:]:
                assert not (a.internal_vertices & b.internal_vertices)


class TestClassification:
    def test_crossing_chords_skew(self):
        g = gen.cycle(4).add_edges([(0, 2), (1, 3)])
        a, b = bridges_of_cycle(g, [0, 1, 2, 3])
        assert classify_bridge_pair(a, b, [0, 1, 2, 3]) == "skew"

    def test_parallel_chords_avoid(self):
        c = list(range(6))
        g = gen.cycle(6).add_edges([(0, 2), (3, 5)])
        a, b = bridges_of_cycle(g, c)
        assert classify_bridge_pair(a, b, c) == "avoid"

    def test_three_equivalent_three_bridges(self):
        # three extra vertices each joined to all of the triangle 0,1,2
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2)] + [(x, v) for x in (3, 4, 5) for v in (0, 1, 2)])
        bs = bridges_of_cycle(g, [0, 1, 2])
        assert len(bs) == 3
        assert {classify_bridge_pair(a, b, [0, 1, 2]) for i, a in enumerate(bs) for b in bs[i + 1:]} == {
            "equivalent-3-bridges"
        }

    def test_different_hosts(self):
        g = gen.complete(4)
        (a,) = bridges_of_cycle(g, [0, 1, 2])
        (b,) = bridges_of_cycle(g, [0, 1, 3])
        with pytest.raises(GraphError):
            classify_bridge_pair(a, b, [0, 1, 2])


class TestEars:
    def test_cycle_has_no_ears(self):
        dec = ear_decomposition(gen.cycle(5))
        assert dec.ears == () and len(dec.stages()) == 1

    def test_k4_three_stages(self):
        g = gen.complete(4)
        dec = ear_decomposition(g)
        assert verify_ear_decomposition(g, dec) == (True, "")
        assert len(dec.stages()) == 3

    def test_twelve_vertex_example(self):
        g = gen.ear_example_graph()
        given_dec = EarDecomposition((0, 1, 2, 3, 4), ((0, 5, 6, 7, 2), (7, 8, 9, 10, 11, 3)))
        assert verify_ear_decomposition(g, given_dec) == (True, "")
        assert verify_ear_decomposition(g, ear_decomposition(g))[0]

    def test_bad_ear_reported(self):
        g = gen.complete(4)
        dec = EarDecomposition((0, 1, 2), ((0, 3, 0),))
        ok, why = verify_ear_decomposition(g, dec)
        assert not ok and "ear 0" in why

    def test_requires_two_connected(self):
        with pytest.raises(HypothesisViolation):
            ear_decomposition(gen.path(4))

    @given(graphs(min_n=3, max_n=8, connected=True))
    def test_replay_reconstructs(self, g):
        if not is_k_connected(g, 2):
            return
        dec = ear_decomposition(g)
        assert verify_ear_decomposition(g, dec) == (True, "")
        last = dec.stages()[-1]
        assert set(last.vertices) == set(g.vertices) and last.edges == g.edges
        assert all(is_k_connected(s, 2) for s in dec.stages())


class TestMarkedDecomposition:
    def test_bowtie(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        dec = marked_s_decomposition(g, {2})
        assert len(dec.components) == 2 and dec.marker_edges == frozenset()
        assert dec.reconstruct() == g

    def test_k23_two_side(self):
        g = gen.complete_bipartite(2, 3)
        dec = marked_s_decomposition(g, {0, 1})
        assert len(dec.components) == 3
        assert dec.marker_edges == {(0, 1)}
        for h in dec.components:
            assert h.n == 3 and h.m == 3  # path 0-x-1 plus the marker edge
        assert dec.reconstruct() == g

    def test_three_cut_components_contain_triangle(self):
        g = Graph.from_edges(5, [(x, v) for x in (3, 4) for v in (0, 1, 2)])
        dec = marked_s_decomposition(g, {0, 1, 2})
        assert len(dec.components) == 2
        for h in dec.components:
            assert {(0, 1), (0, 2), (1, 2)} <= h.edges
        assert dec.reconstruct() == g

    def test_not_a_separator(self):
        with pytest.raises(GraphError, match="not a separator"):
            marked_s_decomposition(gen.complete(4), {0})

    @given(graphs(min_n=3, max_n=8, connected=True))
    def test_round_trip(self, g):
        for v in g.vertices:
            rest = g.remove_vertices([v])
            if not rest.is_connected():
                dec = marked_s_decomposition(g, {v})
                assert dec.reconstruct() == g
                assert all(set(h.vertices) > {v} for h in dec.components)

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from graphgeom import generators as gen
from graphgeom.complex import CellComplex, ComplexError, is_closed
from graphgeom.forge import (
    build_bipartite_witness,
    build_complete_witness,
    chordless_cycles,
    raise_dimension,
    verify_hyper_ear_decomposition,
)
from graphgeom.graph import Graph, HypothesisViolation, is_k_connected
from graphgeom.topology import certify_sphere


class TestRaise:
    def test_k4_four_triangles(self):
        r = raise_dimension(gen.complete(4), 2)
        assert r.complex.face_vector() == [4, 6, 4] and len(r.fills) == 4

    def test_k6_twenty_triangles(self):
        assert raise_dimension(gen.complete(6), 2).complex.face_vector() == [6, 15, 20]

    def test_c5_unique_cycle(self):
        r = raise_dimension(gen.cycle(5), 2, "general2")
        assert r.complex.face_vector() == [5, 5, 1]
        assert r.stop_reason.startswith("unique")
        assert r.complex.cells[r.fills[0].new_cell].vertices == (0, 1, 2, 3, 4)

    def test_zero_spheres_stops(self):
        r = raise_dimension(gen.complete_bipartite(3, 3), 2)
        assert r.complex.face_vector() == [6, 9] and r.stop_reason.startswith("no induced")

    def test_fill_certificates_attached(self):
        for rec in raise_dimension(gen.complete(6), 3).fills:
            assert rec.certificate.verdict == "certified"
            assert rec.certificate.dimension == rec.dimension - 1

    def test_strict_hypothesis(self):
        with pytest.raises(HypothesisViolation, match="insufficient connectivity"):
            raise_dimension(gen.complete(5), 3, strict=True)  # kappa 4 allows x <= 2
        raise_dimension(gen.complete(5), 2, strict=True)

    def test_relaxed_hypothesis(self):
        with pytest.raises(HypothesisViolation, match="insufficient connectivity"):
            raise_dimension(gen.cycle(5), 3)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            raise_dimension(gen.complete(4), 2, "nope")

    def test_certified_mode_agrees_on_cliques(self):
        a = raise_dimension(gen.complete(6), 3, "triangulated").complex
        b = raise_dimension(gen.complete(6), 3, "certified").complex
        assert a.face_vector() == b.face_vector()

    def test_certified_mode_fills_square_spheres(self):
        g = gen.complete_bipartite(3, 5)
        assert raise_dimension(g, 3, "general2").stop_reason.startswith("no induced 2-spheres")
        r = raise_dimension(g, 3, "certified")
        assert r.complex.face_vector() == [8, 15, 30, 30]
        assert all(rec.certificate.verdict == "certified" for rec in r.fills)

    def test_metadata_records_snapshot(self):
        meta = raise_dimension(gen.complete(4), 2).complex.meta
        assert meta["filling"] == "snapshot" and meta["mode"] == "triangulated"

    @settings(max_examples=30)
    @given(graphs(min_n=3, max_n=7, connected=True))
    def test_skeleton_preserved_and_simple(self, g):
        if not is_k_connected(g, 2):
            return
        for mode in ("triangulated", "general2"):
            c = raise_dimension(g, 2, mode).complex
            assert c.skeleton_graph == g
            assert c.simplicity_violations() == []

    @settings(max_examples=20)
    @given(graphs(min_n=3, max_n=7, connected=True))
    def test_independent_of_labels(self, g):
        if not is_k_connected(g, 2):
            return
        perm = list(reversed(g.vertices))
        relabel = dict(zip(g.vertices, perm))
        h = Graph.from_edges(g.vertices, [(relabel[u], relabel[v]) for u, v in g.edges])
        a = raise_dimension(g, 2, "general2").complex
        b = raise_dimension(h, 2, "general2").complex
        sets_a = {tuple(sorted(relabel[v] for v in c.vertices)) for c in a.cells if c.dim == 2}
        sets_b = {c.vertices for c in b.cells if c.dim == 2}
        assert sets_a == sets_b

    def test_repeat_is_identical(self):
        g = gen.octahedron()
        assert raise_dimension(g, 3, "general2").complex == raise_dimension(g, 3, "general2").complex


class TestWitnesses:
    def test_complete_d2_is_k5(self):
        c = build_complete_witness(2)
        assert c.dim == 1 and c.skeleton_graph == gen.complete(5)

    def test_complete_d3(self):
        c = build_complete_witness(3)
        assert c.face_vector() == [6, 15, 20]
        for vs in combinations(range(6), 4):
            sub, _ = c.restrict(c.induced(vs))
            assert sub.face_vector() == [4, 6, 4]

    def test_complete_d4(self):
        c = build_complete_witness(4)
        assert c.face_vector() == [7, 21, 35, 35]

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_complete_closed(self, d):
        assert is_closed(build_complete_witness(d)).closed

    def test_bipartite_d2(self):
        c = build_bipartite_witness(2)
        assert c.dim == 1 and c.skeleton_graph == gen.complete_bipartite(3, 3)

    def test_bipartite_d3_squares(self):
        c = build_bipartite_witness(3)
        assert c.face_vector() == [7, 12, 18]
        assert all(len(c.cells[x].vertices) == 4 for x in c.cells_of(2))
        assert c.skeleton_graph == gen.complete_bipartite(3, 4)
        assert is_closed(c).closed


class TestChordlessCycles:
    @settings(max_examples=40)
    @given(graphs(min_n=3, max_n=7))
    def test_matches_networkx(self, g):
        ours = {frozenset(c) for c in chordless_cycles(g)}
        theirs = {frozenset(c) for c in nx.chordless_cycles(g.to_networkx()) if len(c) >= 3}
        assert ours == theirs
        assert len(ours) == len(chordless_cycles(g))

    def test_petersen_count(self):
        # twelve 5-cycles and ten 6-cycles are induced; no shorter cycles
        lengths = sorted(len(c) for c in chordless_cycles(gen.petersen()))
        assert lengths.count(5) == 12 and lengths.count(6) == 10


def _capped_octahedron():
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    cap1 = [(0, 2, 6), (0, 4, 6), (2, 4, 6)]
    cap2 = [(1, 3, 7), (1, 5, 7), (3, 5, 7)]
    c = CellComplex.from_simplices(tris + cap1 + cap2)
    index = {cell.vertices: i for i, cell in enumerate(c.cells)}
    g0 = c.closure(index[t] for t in tris)
    g1 = g0 | c.closure(index[t] for t in cap1)
    g2 = g1 | c.closure(index[t] for t in cap2)
    return c, [g0, g1, g2]


class TestHyperEar:
    def test_trivial(self):
        t = gen.simplex_boundary(3)
        assert verify_hyper_ear_decomposition(t, [range(len(t))]) == (True, "")

    def test_sphere_with_two_caps(self):
        c, stages = _capped_octahedron()
        assert verify_hyper_ear_decomposition(c, stages) == (True, "")

    def test_out_of_order(self):
        c, stages = _capped_octahedron()
        assert verify_hyper_ear_decomposition(c, [stages[1], stages[0], stages[2]]) == (False, "nestedness")

    def test_incomplete(self):
        c, stages = _capped_octahedron()
        ok, why = verify_hyper_ear_decomposition(c, stages[:2])
        assert not ok and "final stage" in why

    def test_initial_not_sphere(self):
        c, stages = _capped_octahedron()
        ok, why = verify_hyper_ear_decomposition(c, [c.closure(c.cells_of(2)[:1]), stages[2]])
        assert not ok and "initial" in why

    def test_dangling(self):
        c, _ = _capped_octahedron()
        with pytest.raises(ComplexError):
            verify_hyper_ear_decomposition(c, [[10_000]])

    def test_certificate_of_initial_stage(self):
        c, stages = _capped_octahedron()
        assert certify_sphere(c, stages[0], 2, ambient_checks=False).verdict == "certified"

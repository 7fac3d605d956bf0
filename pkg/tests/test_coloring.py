from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from graphgeom import generators as gen
from graphgeom.coloring import (
    average_degree,
    degeneracy,
    degeneracy_greedy,
    exact_chromatic,
    frac,
    skeleton_average_degree_audit,
    verify_chromatic_bound,
)
from graphgeom.graph import Graph, GraphError
from oracles import oracle_chromatic


class TestGreedy:
    def test_k4(self):
        assert degeneracy_greedy(gen.complete(4)).palette_size == 4

    def test_tree(self):
        assert degeneracy_greedy(gen.path(7)).palette_size == 2

    def test_petersen(self):
        c = degeneracy_greedy(gen.petersen())
        assert c.is_proper(gen.petersen()) and c.palette_size == 3

    @given(graphs(max_n=10))
    def test_proper_and_within_degeneracy(self, g):
        c = degeneracy_greedy(g)
        assert c.is_proper(g)
        assert c.palette_size <= degeneracy(g) + 1

    @given(graphs(max_n=10))
    def test_degeneracy_matches_networkx(self, g):
        core = max(nx.core_number(g.to_networkx()).values(), default=0)
        assert degeneracy(g) == core


class TestExact:
    def test_bipartite(self):
        assert exact_chromatic(gen.complete_bipartite(3, 3))[0] == 2

    def test_petersen(self):
        k, col = exact_chromatic(gen.petersen())
        assert k == 3 and col.is_proper(gen.petersen())

    def test_odd_cycle(self):
        assert exact_chromatic(gen.cycle(5))[0] == 3

    def test_empty(self):
        assert exact_chromatic(Graph.from_edges(0, []))[0] == 0

    def test_too_large(self):
        with pytest.raises(GraphError, match="instance too large"):
            exact_chromatic(gen.cycle(31))

    def test_mycielski_grotzsch(self):
        # triangle-free, chromatic number 4
        g = Graph.from_edges(11, nx.mycielski_graph(4).edges())
        assert exact_chromatic(g)[0] == 4

    @settings(max_examples=100)
    @given(graphs(max_n=7))
    def test_agrees_with_oracle(self, g):
        k, col = exact_chromatic(g)
        assert k == oracle_chromatic(g)
        assert col.is_proper(g) and col.palette_size == k
        assert degeneracy_greedy(g).palette_size >= k

    def test_json_shape(self):
        out = exact_chromatic(gen.cycle(5))[1].to_json()
        assert out["k"] == 3 and set(out["colors"]) == {"0", "1", "2", "3", "4"}


class TestAverageDegree:
    def test_octahedron(self):
        g = gen.octahedron()
        assert average_degree(g) == 4 and g.m == 3 * g.n - 6

    def test_k6(self):
        assert average_degree(gen.complete(6)) == 5

    def test_petersen(self):
        assert average_degree(gen.petersen()) == 3

    def test_exact_rational(self):
        assert average_degree(gen.path(3)) == Fraction(4, 3) and frac(Fraction(4, 3)) == "4/3"

    def test_empty(self):
        with pytest.raises(GraphError, match="empty graph"):
            average_degree(Graph.from_edges(0, []))


class TestBound:
    def test_octahedron_d2(self):
        rep = verify_chromatic_bound(gen.octahedron(), 2)
        assert rep.applicable and rep.chi == 3 and rep.bound == 6 and rep.holds

    def test_k5_d2_inapplicable(self):
        rep = verify_chromatic_bound(gen.complete(5), 2)
        assert not rep.applicable and rep.holds is None
        assert rep.failed_hypotheses == ["K_5 minor present"]

    def test_petersen_d3_has_k34(self):
        rep = verify_chromatic_bound(gen.petersen(), 3)
        assert rep.failed_hypotheses == ["K_3,4 minor present"] and rep.clique_minor is None

    def test_petersen_d4(self):
        rep = verify_chromatic_bound(gen.petersen(), 4)
        assert rep.applicable and rep.chi == 3 and rep.holds

    @settings(max_examples=30)
    @given(graphs(max_n=8))
    def test_holds_when_applicable(self, g):
        for d in (2, 3):
            rep = verify_chromatic_bound(g, d)
            assert rep.holds in (True, None)
            if rep.applicable:
                assert rep.holds


class TestAudit:
    def test_octahedron(self):
        rep = skeleton_average_degree_audit(gen.octahedron_surface(), 2)
        assert rep["average_degree"] == "4" and rep["below_bound"] and rep["triangulated"]
        assert rep["layers"]["0"]["sizes"] == [1, 4, 1]

    def test_k5_skeleton(self):
        rep = skeleton_average_degree_audit(gen.stacked_sphere(4, 0), 3)
        assert rep["average_degree"] == "4" and rep["bound"] == 12 and rep["below_bound"]

    def test_stacked_s3_eight_vertices(self):
        c = gen.stacked_sphere(4, 3)
        rep = skeleton_average_degree_audit(c, 3)
        assert rep["vertices"] == 8
        assert Fraction(rep["average_degree"]) < 12
        for lay in rep["layers"].values():
            assert sum(lay["sizes"]) == 8

import json

import pytest
from hypothesis import given, strategies as st

from graphgeom import generators as gen
from graphgeom.complex import Cell, CellComplex, ComplexError, face_vector, incidence_degree, is_closed
from graphgeom.forge import raise_dimension, regions, sphere_regions


def _drop_top(c: CellComplex, k: int = 0) -> CellComplex:
    tri = c.cells_of(c.dim)[k]
    return c.restrict(set(range(len(c))) - {tri})[0]


class TestConstruction:
    def test_boundary_must_drop_one_dimension(self):
        with pytest.raises(ComplexError, match="wrong dimension"):
            CellComplex((Cell(0, (0,), ()), Cell(0, (1,), ()), Cell(2, (0, 1), (0, 1))))

    def test_dangling_boundary(self):
        with pytest.raises(ComplexError, match="dangling"):
            CellComplex((Cell(0, (0,), ()), Cell(1, (0, 1), (0, 7))))

    def test_loop_rejected(self):
        with pytest.raises(ComplexError):
            CellComplex((Cell(0, (0,), ()), Cell(1, (0, 0), (0, 0))))

    def test_parallel_edges_rejected(self):
        cells = (Cell(0, (0,), ()), Cell(0, (1,), ()), Cell(1, (0, 1), (0, 1)), Cell(1, (0, 1), (0, 1)))
        with pytest.raises(ComplexError, match="parallel"):
            CellComplex(cells)

    def test_skeleton_bijection(self):
        g = gen.petersen()
        c = CellComplex.from_graph(g)
        assert c.skeleton_graph == g and c.face_vector() == [10, 15]


class TestFaceVector:
    def test_tetrahedron(self):
        assert face_vector(gen.simplex_boundary(3)) == [4, 6, 4]

    def test_octahedron(self):
        assert face_vector(gen.octahedron_surface()) == [6, 12, 8]

    def test_u2_k6(self):
        assert face_vector(raise_dimension(gen.complete(6), 2).complex) == [6, 15, 20]


class TestIncidenceDegree:
    def test_tetra_edge_in_two_triangles(self):
        t = gen.simplex_boundary(3)
        assert all(incidence_degree(t, e, 2) == 2 for e in t.cells_of(1))

    def test_octahedron_vertex_degree(self):
        o = gen.octahedron_surface()
        assert all(incidence_degree(o, v, 1) == 4 for v in o.cells_of(0))

    def test_triangle_has_three_edges(self):
        t = gen.simplex_boundary(3)
        assert all(incidence_degree(t, f, 1) == 3 for f in t.cells_of(2))

    def test_same_dimension_adjacency(self):
        t = gen.simplex_boundary(3)
        assert all(incidence_degree(t, f, 2) == 3 for f in t.cells_of(2))

    def test_bad_id(self):
        with pytest.raises(ComplexError):
            incidence_degree(gen.simplex_boundary(3), 99, 1)


class TestClosed:
    def test_tetra_closed(self):
        assert is_closed(gen.simplex_boundary(3)).closed

    def test_missing_triangle_leaves_three_pendant_edges(self):
        rep = is_closed(_drop_top(gen.simplex_boundary(3)))
        assert not rep.closed and len(rep.pendant) == 3

    def test_u2_k6_closed(self):
        assert is_closed(raise_dimension(gen.complete(6), 2).complex).closed


class TestRegions:
    def test_tetra_two_regions(self):
        c = sphere_regions(gen.simplex_boundary(3))
        assert len(c.regions) == 2
        for r in c.regions:
            assert len(c.cells[r].boundary) == 4

    def test_planar_octahedron_eight_triangles(self):
        c = gen.octahedron_planar()
        assert len(c.regions) == 8
        assert all(len(c.cells[r].boundary) == 3 for r in c.regions)

    def test_pendant_facet_rejected(self):
        c = _drop_top(gen.simplex_boundary(3))
        with pytest.raises(ComplexError, match="not a closed embedded complex"):
            sphere_regions(c)

    def test_nonplanar_rejected(self):
        with pytest.raises(ComplexError, match="not planar"):
            regions(CellComplex.from_graph(gen.complete(5)))

    @pytest.mark.parametrize("name,c,d", gen.closed_corpus())
    def test_every_facet_in_two_regions(self, name, c, d):
        count = {f: 0 for f in c.cells_of(d - 1)}
        for r in c.regions:
            for f in c.cells[r].boundary:
                count[f] += 1
        assert set(count.values()) == {2}


class TestSimplicity:
    def test_corpus_is_simple(self):
        for _, c, _ in gen.closed_corpus():
            assert c.simplicity_violations() == []

    def test_duplicate_triangle_flagged(self):
        t = gen.simplex_boundary(3)
        dup = t.with_cells([t.cells[t.cells_of(2)[0]]])
        assert dup.simplicity_violations()


class TestJson:
    @pytest.mark.parametrize("name,c,d", gen.closed_corpus())
    def test_round_trip(self, name, c, d):
        back = CellComplex.from_json(json.dumps(c.to_json()))
        assert back == c and back.regions == c.regions

    def test_declared_dim_mismatch(self):
        data = gen.simplex_boundary(3).to_json()
        data["dim"] = 5
        with pytest.raises(ComplexError, match="declared dim"):
            CellComplex.from_json(data)

    def test_malformed(self):
        with pytest.raises(ComplexError):
            CellComplex.from_json({"cells": [[0, [1]]]})


class TestClosureStar:
    @given(st.integers(0, 2), st.integers(0, 3))
    def test_closure_and_star_are_dual(self, dim, k):
        t = gen.simplex_boundary(3)
        ids = t.cells_of(dim)
        x = ids[k % len(ids)]
        for y in range(len(t)):
            assert (x in t.closure([y])) == (y in t.star(x))

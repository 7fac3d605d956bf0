"""Named graphs and complexes used across the test corpus and scripts."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .complex import CellComplex
from .forge import regions, sphere_regions
from .graph import Graph


def rng(seed: int) -> np.random.Generator:
    """The one PRNG used for sampling: PCG64 seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(seed))


# ---------------------------------------------------------------------- graphs

def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    return Graph.from_edges(s + t, [(a, b) for a in range(s) for b in range(s, s + t)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def octahedron() -> Graph:
    """K_{2,2,2}; antipodal pairs are (0,1), (2,3), (4,5)."""
    return Graph.from_edges(6, [(u, v) for u, v in combinations(range(6), 2) if u // 2 != v // 2])


def ear_example_graph() -> Graph:
    """The 12-vertex ear-decomposition example, vertex v_i labelled i - 1."""
    paths = [[1, 2, 3, 4, 5, 1], [1, 6, 7, 8, 3], [8, 9, 10, 11, 12, 4]]
    edges = [(p[i] - 1, p[i + 1] - 1) for p in paths for i in range(len(p) - 1)]
    return Graph.from_edges(12, edges)


def stacked_planar_triangulation(n: int, seed: int) -> tuple[Graph, list[tuple[int, int, int]]]:
    """Random stacked (Apollonian) triangulation on n >= 4 vertices and its faces."""
    if n < 4:
        raise ValueError("need at least 4 vertices")
    r = rng(seed)
    faces = [tuple(f) for f in combinations(range(4), 3)]
    edges = set(combinations(range(4), 2))
    for v in range(4, n):
        i = int(r.integers(len(faces)))
        a, b, c = faces.pop(i)
        faces += [(a, b, v), (a, c, v), (b, c, v)]
        edges |= {(a, v), (b, v), (c, v)}
    return Graph.from_edges(n, edges), [tuple(sorted(f)) for f in faces]


# ------------------------------------------------------------------- complexes

def simplex_boundary(k: int) -> CellComplex:
    """Boundary of the k-simplex on vertices 0..k."""
    return CellComplex.from_simplices(combinations(range(k + 1), k))


def octahedron_surface() -> CellComplex:
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return CellComplex.from_simplices(tris)


def torus7() -> CellComplex:
    """The 7-vertex triangulated torus."""
    tris = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return CellComplex.from_simplices(tris)


def with_facets_as_regions(facets) -> CellComplex:
    """The codimension-one skeleton of a simplicial manifold, with its facets
    re-attached as region cells (how a triangulated sphere sits in itself)."""
    facets = [tuple(sorted(f)) for f in facets]
    k = len(facets[0]) - 1
    skel = CellComplex.from_simplices(f2 for f in facets for f2 in combinations(f, k))
    index = {skel.cells[c].vertices: c for c in skel.cells_of(k - 1)}
    witness = [[index[s] for s in combinations(f, k)] for f in facets]
    return regions(skel, witness)


def stacked_sphere_facets(d: int, subdivisions: int, seed: int | None = None) -> list[tuple[int, ...]]:
    """Facets of a stacked (d-1)-sphere: boundary of the d-simplex followed by
    stellar subdivisions of facets.  With ``seed`` None the lowest facet is
    always subdivided."""
    facets = [tuple(f) for f in combinations(range(d + 1), d)]
    r = rng(seed) if seed is not None else None
    nxt = d + 1
    for _ in range(subdivisions):
        i = int(r.integers(len(facets))) if r is not None else 0
        f = facets.pop(i)
        facets += [tuple(sorted(sub + (nxt,))) for sub in combinations(f, d - 1)]
        nxt += 1
    return sorted(facets)


def stacked_sphere(d: int, subdivisions: int, seed: int | None = None) -> CellComplex:
    """Stacked (d-1)-sphere as a simplicial complex (no regions)."""
    return CellComplex.from_simplices(stacked_sphere_facets(d, subdivisions, seed))


def tetra_regions() -> CellComplex:
    """Boundary of the tetrahedron with inside and outside regions (d = 3)."""
    return sphere_regions(simplex_boundary(3))


def simplex4_regions() -> CellComplex:
    """Boundary of the 4-simplex with inside and outside regions (d = 4)."""
    return sphere_regions(simplex_boundary(4))


def simplex4_skeleton_regions() -> CellComplex:
    """2-skeleton of the boundary of the 4-simplex with its five tetrahedra as
    regions (d = 3)."""
    return with_facets_as_regions(combinations(range(5), 4))


def planar_regions(g: Graph) -> CellComplex:
    return regions(CellComplex.from_graph(g))


def octahedron_planar() -> CellComplex:
    return planar_regions(octahedron())


def octahedron_regions() -> CellComplex:
    return sphere_regions(octahedron_surface())


def stacked_s3_regions(subdivisions: int, seed: int | None = None) -> CellComplex:
    """Stacked triangulated 3-sphere: 2-skeleton plus tetrahedra as regions."""
    return with_facets_as_regions(stacked_sphere_facets(4, subdivisions, seed))


# ----------------------------------------------------------------- corpus

def closed_corpus() -> list[tuple[str, CellComplex, int]]:
    """Closed region-complete complexes (name, complex, ambient d)."""
    out = [
        ("tetra_regions", tetra_regions(), 3),
        ("octahedron_planar", octahedron_planar(), 2),
        ("simplex4_regions", simplex4_regions(), 4),
        ("simplex4_skeleton_regions", simplex4_skeleton_regions(), 3),
        ("octahedron_regions", octahedron_regions(), 3),
        ("k4_planar", planar_regions(complete(4)), 2),
    ]
    for k in (1, 2, 3):
        out.append((f"stacked_s3_{k}", stacked_s3_regions(k), 3))
    for n in (5, 7, 9):
        out.append((f"stacked_planar_{n}", planar_regions(stacked_planar_triangulation(n, n)[0]), 2))
    return out


def random_closed_complex(seed: int) -> tuple[CellComplex, int]:
    """A random closed region-complete complex for d in {2, 3, 4, 5}."""
    r = rng(seed)
    kind = int(r.integers(4))
    sub_seed = int(r.integers(2**31))
    if kind == 0:
        n = int(r.integers(4, 13))
        return planar_regions(stacked_planar_triangulation(n, sub_seed)[0]), 2
    if kind == 1:
        return stacked_s3_regions(int(r.integers(0, 5)), sub_seed), 3
    if kind == 2:
        return sphere_regions(stacked_sphere(4, int(r.integers(0, 4)), sub_seed)), 4
    return sphere_regions(stacked_sphere(5, int(r.integers(0, 3)), sub_seed)), 5

"""The dimension-raising construction U^x(G), region cells, canonical witness
complexes and hyper ear decomposition checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .complex import Cell, CellComplex, ComplexError, is_closed
from .graph import Graph, HypothesisViolation, vertex_connectivity
from .topology import SphereCertificate, betti_numbers, certify_sphere

MODES = ("triangulated", "general2", "certified")
CERTIFIED_MAX_VERTICES = 16


@dataclass(frozen=True)
class FillRecord:
    dimension: int  # dimension of the new ball
    filled_sphere: tuple[int, ...]  # cell ids of the induced (dimension-1)-sphere
    new_cell: int
    certificate: SphereCertificate

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "filled_sphere": list(self.filled_sphere),
            "new_cell": self.new_cell,
            "certificate": self.certificate.to_json(),
        }


@dataclass
class RaiseResult:
    complex: CellComplex
    fills: list[FillRecord]
    stop_reason: str
    levels: list[int] = field(default_factory=list)  # fills per level


def chordless_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Induced cycles of length >= 3, each listed once starting at its
    smallest vertex with the smaller neighbour second."""
    out = []
    adj = g.adj
    for s in g.vertices:
        def extend(path: list[int], on_path: set[int]) -> None:
            last = path[-1]
            for w in sorted(adj[last]):
                if w <= s or w in on_path:
                    continue
                # w may touch the path only at its last vertex (and at s when closing)
                inner = adj[w] & on_path
                if inner - {last, s}:
                    continue
                if s in inner and len(path) >= 2:
                    if path[1] < w:
                        out.append(tuple(path + [w]))
                    continue
                if s in inner:
                    continue
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                path.pop()
                on_path.discard(w)

        for a in sorted(adj[s]):
            if a > s:
                extend([s, a], {s, a})
    return sorted(out, key=lambda cyc: (len(cyc), cyc))


def _complement_connected(g: Graph, verts: Iterable[int]) -> bool:
    rest = g.remove_vertices(verts)
    return rest.n == 0 or rest.is_connected()


def _simplex_boundary_candidates(cx: CellComplex, level: int) -> list[tuple[int, ...]]:
    """(level+2)-cliques whose induced subcomplex is exactly the boundary of a simplex."""
    g = cx.skeleton_graph
    k = level + 2
    by_vs = {}
    for cid, c in enumerate(cx.cells):
        if not c.region:
            by_vs.setdefault((c.dim, c.vertices), []).append(cid)
    found = []
    for clique in nx.enumerate_all_cliques(g.to_networkx()):
        if len(clique) < k:
            continue
        if len(clique) > k:
            break
        clique = tuple(sorted(clique))
        induced = cx.induced(clique, max_dim=level)
        need = sum(len(list(combinations(clique, j + 1))) for j in range(level + 1))
        if len(induced) != need:
            continue
        if all(len(by_vs.get((j, f), [])) == 1 for j in range(level + 1) for f in combinations(clique, j + 1)):
            found.append(clique)
    return sorted(found)


def _certified_candidates(cx: CellComplex, level: int) -> list[tuple[int, ...]]:
    g = cx.skeleton_graph
    if g.n > CERTIFIED_MAX_VERTICES:
        raise ComplexError(
            f"certified mode enumerates vertex subsets; limited to {CERTIFIED_MAX_VERTICES} vertices"
        )
    out = []
    for size in range(level + 2, g.n + 1):
        for vs in combinations(g.vertices, size):
            ids = cx.induced(vs, max_dim=level)
            if not any(cx.cells[x].dim == level for x in ids):
                continue
            out.append(vs)
    return out


def raise_dimension(
    g: Graph,
    x: int,
    mode: str = "triangulated",
    strict: bool = False,
) -> RaiseResult:
    """Fill induced spheres level by level up to dimension ``x``.

    Candidates at each level are enumerated against the level's starting
    complex and filled in canonical vertex-set order.  ``strict`` enforces the
    original standing hypothesis (connectivity k >= 4 and x <= k - 2); the
    default only asks for connectivity >= x.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if x < 1:
        raise ValueError("x must be at least 1")
    kappa = vertex_connectivity(g)
    if strict and x >= 2 and (kappa < 4 or x > kappa - 2):
        raise HypothesisViolation(f"insufficient connectivity for x={x} (kappa={kappa})")
    if not strict and x >= 2 and kappa < x:
        raise HypothesisViolation(f"insufficient connectivity for x={x} (kappa={kappa})")

    cx = CellComplex.from_graph(g)
    fills: list[FillRecord] = []
    levels: list[int] = []
    stop = f"reached x={x}"
    for level in range(1, x):
        spheres: list[tuple[tuple[int, ...], SphereCertificate]] = []
        if level == 1 and mode != "triangulated":
            for cyc in chordless_cycles(g):
                if not _complement_connected(g, cyc):
                    continue
                ids = cx.induced(cyc, max_dim=1)
                spheres.append((tuple(sorted(cyc)), certify_sphere(cx, ids, 1)))
        elif level >= 2 and mode == "certified":
            for vs in _certified_candidates(cx, level):
                cert = certify_sphere(cx, cx.induced(vs, max_dim=level), level)
                if cert.verdict == "certified":
                    spheres.append((vs, cert))
        else:
            for vs in _simplex_boundary_candidates(cx, level):
                if not _complement_connected(g, vs):
                    continue
                spheres.append((vs, certify_sphere(cx, cx.induced(vs, max_dim=level), level)))
        spheres = [(vs, cert) for vs, cert in sorted(spheres, key=lambda p: (len(p[0]), p[0]))
                   if cert.verdict == "certified"]
        if not spheres:
            stop = f"no induced {level}-spheres at level {level}"
            break
        base = len(cx)
        new_cells = []
        for j, (vs, cert) in enumerate(spheres):
            tops = tuple(sorted(c for c in cert.cells if cx.cells[c].dim == level))
            new_cells.append(Cell(level + 1, tuple(sorted(vs)), tops))
            fills.append(FillRecord(level + 1, cert.cells, base + j, cert))
        cx = cx.with_cells(new_cells)
        levels.append(len(spheres))
        if len(spheres) == 1:
            stop = f"unique induced {level}-sphere at level {level}"
            break
    cx = CellComplex(cx.cells, {"mode": mode, "filling": "snapshot", "stop_reason": stop})
    return RaiseResult(cx, fills, stop, levels)


def build_complete_witness(d: int) -> CellComplex:
    """U^{d-1} of K_{d+3}, triangulated."""
    if d < 2:
        raise ValueError("d must be at least 2")
    g = Graph.from_edges(d + 3, combinations(range(d + 3), 2))
    return raise_dimension(g, d - 1, "triangulated").complex


def build_bipartite_witness(d: int, mode: str = "general2") -> CellComplex:
    """U^{d-1} of K_{3,d+1}; level-1 fills are the chordless 4-cycles."""
    if d < 2:
        raise ValueError("d must be at least 2")
    g = Graph.from_edges(d + 4, [(a, b) for a in range(3) for b in range(3, d + 4)])
    return raise_dimension(g, d - 1, mode).complex


# -------------------------------------------------------------------- regions

def planar_faces(g: Graph) -> list[list[tuple[int, int]]]:
    """Faces of a planar embedding of ``g`` as lists of directed half-edges."""
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        raise ComplexError("graph is not planar")
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, v in sorted(emb.edges()):
        if (u, v) in seen:
            continue
        walk = []
        a, b = u, v
        while (a, b) not in seen:
            seen.add((a, b))
            walk.append((a, b))
            a, b = b, emb[b][a]["cw"]
        faces.append(walk)
    return faces


def regions(c: CellComplex, embedding_witness: Sequence[Sequence[int]] | None = None) -> CellComplex:
    """Attach region cells one dimension above the complex.

    ``embedding_witness`` lists, per region, the ids of the top cells bounding
    it.  For a graph (dimension 1) with no witness, the regions are the faces
    of a planar embedding of the skeleton.
    """
    top = c.dim
    if embedding_witness is None:
        if top != 1:
            raise ComplexError("region data must be supplied for complexes of dimension >= 2")
        witness = []
        for face in planar_faces(c.skeleton_graph):
            witness.append([c.edge_id[(min(a, b), max(a, b))] for a, b in face])
    else:
        witness = [list(r) for r in embedding_witness]
    if top >= 2:
        pend = is_closed(c).pendant
        if pend:
            raise ComplexError(f"not a closed embedded complex: pendant cell {pend[0]}")
    count = {f: 0 for f in c.cells_of(top)}
    for r in witness:
        for f in r:
            if f not in count:
                raise ComplexError(f"region references {f}, not a {top}-cell")
            count[f] += 1
    bad = [f for f, k in count.items() if k != 2]
    if bad:
        raise ComplexError(f"not a closed embedded complex: cell {bad[0]} lies in {count[bad[0]]} regions")
    new = []
    for r in witness:
        if len(set(r)) != len(r):
            raise ComplexError("not a closed embedded complex: region meets a facet twice")
        vs = tuple(sorted({v for f in r for v in c.cells[f].vertices}))
        new.append(Cell(top + 1, vs, tuple(sorted(r)), region=True))
    return c.with_cells(new)


def sphere_regions(c: CellComplex) -> CellComplex:
    """Inside and outside regions of a complex that is itself a sphere."""
    tops = c.cells_of(c.dim)
    return regions(c, [tops, tops])


# --------------------------------------------------------- hyper ear checking

def verify_hyper_ear_decomposition(
    c: CellComplex, stages: Sequence[Iterable[int]]
) -> tuple[bool, str]:
    """Check a nested sequence of subcomplexes G_0 ⊆ ... ⊆ G_k = c.

    G_0 must certify as a sphere of the complex's top dimension; each step adds
    a ball whose boundary lies in the previous stage and whose interior
    vertices do not.
    """
    top = c.dim
    sets = [set(s) for s in stages]
    for s in sets:
        if any(not 0 <= x < len(c) for x in s):
            raise ComplexError("stage references an unknown cell")
    if not sets:
        return False, "no stages"
    for j, s in enumerate(sets):
        if not c.is_subcomplex(s):
            return False, f"stage {j} is not a subcomplex"
    for j in range(len(sets) - 1):
        if not sets[j] < sets[j + 1]:
            return False, "nestedness"
    cert = certify_sphere(c, sets[0], top, ambient_checks=False)
    if cert.verdict != "certified":
        return False, "initial stage is not a sphere"
    for j in range(len(sets) - 1):
        prev, cur = sets[j], sets[j + 1]
        new_tops = [x for x in cur - prev if c.cells[x].dim == top]
        if not new_tops:
            return False, f"ear {j} is trivial"
        ball = c.closure(new_tops)
        if ball | prev != cur:
            return False, f"ear {j} adds cells outside its ball"
        sub, remap = c.restrict(ball)
        if betti_numbers(sub) != [1] + [0] * top:
            return False, f"ear {j} is not a ball"
        counts: dict[int, int] = {}
        for t in new_tops:
            for f in c.cells[t].boundary:
                counts[f] = counts.get(f, 0) + 1
        if any(k > 2 for k in counts.values()):
            return False, f"ear {j} is not a ball"
        rim = c.closure(f for f, k in counts.items() if k == 1)
        if not rim <= prev:
            return False, f"ear {j} boundary leaves the current stage"
        interior_vertices = {x for x in ball - rim if c.cells[x].dim == 0}
        if interior_vertices & prev:
            return False, f"ear {j} interior meets the current stage"
    if sets[-1] != set(range(len(c))) - set(c.regions):
        return False, "final stage differs from the complex"
    return True, ""

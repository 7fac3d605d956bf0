"""Regular cell complexes: graded cells with explicit boundary lists."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    dim: int
    vertices: tuple[int, ...]
    boundary: tuple[int, ...]
    region: bool = False


@dataclass(frozen=True)
class CellComplex:
    """Cells are addressed by their index in ``cells``.

    A cell's vertex set is the union of its boundary cells' vertex sets, and
    its boundary lists cells of dimension exactly one lower.  Region cells are
    top-dimensional cells standing for the components of the complement of an
    embedded complex; they may repeat vertex sets (inside/outside of a sphere).
    """

    cells: tuple[Cell, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        seen_vertices: set[int] = set()
        seen_edges: set[tuple[int, int]] = set()
        for cid, cell in enumerate(self.cells):
            vs = cell.vertices
            if len(set(vs)) != len(vs) or tuple(sorted(vs)) != vs:
                raise ComplexError(f"cell {cid}: vertex tuple must be sorted and repeat-free")
            if cell.dim == 0:
                if len(vs) != 1 or cell.boundary:
                    raise ComplexError(f"cell {cid}: malformed 0-cell")
                if vs[0] in seen_vertices:
                    raise ComplexError(f"cell {cid}: duplicate 0-cell for vertex {vs[0]}")
                seen_vertices.add(vs[0])
                continue
            union: set[int] = set()
            for b in cell.boundary:
                if not 0 <= b < len(self.cells):
                    raise ComplexError(f"cell {cid}: dangling boundary id {b}")
                if self.cells[b].dim != cell.dim - 1:
                    raise ComplexError(f"cell {cid}: boundary cell {b} has wrong dimension")
                union.update(self.cells[b].vertices)
            if union != set(vs):
                raise ComplexError(f"cell {cid}: vertex set differs from its boundary's")
            if cell.dim == 1:
                if len(vs) != 2 or len(cell.boundary) != 2:
                    raise ComplexError(f"cell {cid}: malformed 1-cell")
                if vs in seen_edges:
                    raise ComplexError(f"cell {cid}: parallel edge {vs}")
                seen_edges.add(vs)

    # ------------------------------------------------------------ construction

    @classmethod
    def from_graph(cls, g: Graph) -> "CellComplex":
        cells = [Cell(0, (v,), ()) for v in g.vertices]
        vid = {v: i for i, v in enumerate(g.vertices)}
        for u, v in g.sorted_edges():
            cells.append(Cell(1, (u, v), (vid[u], vid[v])))
        return cls(tuple(cells))

    @classmethod
    def from_simplices(cls, facets: Iterable[Sequence[int]]) -> "CellComplex":
        """Simplicial complex generated by ``facets`` (closure taken)."""
        faces: set[tuple[int, ...]] = set()
        for f in facets:
            f = tuple(sorted(f))
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        ordered = sorted(faces, key=lambda s: (len(s), s))
        index = {s: i for i, s in enumerate(ordered)}
        cells = []
        for s in ordered:
            bd = () if len(s) == 1 else tuple(sorted(index[t] for t in combinations(s, len(s) - 1)))
            cells.append(Cell(len(s) - 1, s, bd))
        return cls(tuple(cells))

    def with_cells(self, new: Iterable[Cell], **meta) -> "CellComplex":
        merged = dict(self.meta)
        merged.update(meta)
        return CellComplex(self.cells + tuple(new), merged)

    def restrict(self, ids: Iterable[int]) -> tuple["CellComplex", dict[int, int]]:
        """Sub-complex on ``ids`` (must be closed under faces), re-indexed."""
        keep = sorted(set(ids))
        if not self.is_subcomplex(keep):
            raise ComplexError("cell set is not a subcomplex")
        remap = {old: new for new, old in enumerate(keep)}
        cells = tuple(
            Cell(c.dim, c.vertices, tuple(remap[b] for b in c.boundary), c.region)
            for c in (self.cells[i] for i in keep)
        )
        return CellComplex(cells), remap

    # ---------------------------------------------------------------- queries

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    @cached_property
    def _by_dim(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for cid, c in enumerate(self.cells):
            out.setdefault(c.dim, []).append(cid)
        return out

    def cells_of(self, i: int) -> list[int]:
        return self._by_dim.get(i, [])

    def face_vector(self) -> list[int]:
        return [len(self.cells_of(i)) for i in range(self.dim + 1)]

    @cached_property
    def vertex_id(self) -> dict[int, int]:
        return {self.cells[c].vertices[0]: c for c in self.cells_of(0)}

    @cached_property
    def edge_id(self) -> dict[tuple[int, int], int]:
        return {self.cells[c].vertices: c for c in self.cells_of(1)}

    @cached_property
    def cofaces(self) -> dict[int, list[int]]:
        up: dict[int, list[int]] = {cid: [] for cid in range(len(self.cells))}
        for cid, c in enumerate(self.cells):
            for b in c.boundary:
                up[b].append(cid)
        return up

    @cached_property
    def skeleton_graph(self) -> Graph:
        return Graph.from_edges(sorted(self.vertex_id), self.edge_id)

    @property
    def regions(self) -> list[int]:
        return [cid for cid, c in enumerate(self.cells) if c.region]

    def closure(self, ids: Iterable[int]) -> set[int]:
        out: set[int] = set()
        stack = list(ids)
        while stack:
            cid = stack.pop()
            if cid in out:
                continue
            if not 0 <= cid < len(self.cells):
                raise ComplexError(f"unknown cell id {cid}")
            out.add(cid)
            stack.extend(self.cells[cid].boundary)
        return out

    def star(self, cid: int) -> set[int]:
        """All cells having ``cid`` in their closure (``cid`` included)."""
        out = {cid}
        stack = [cid]
        while stack:
            for up in self.cofaces[stack.pop()]:
                if up not in out:
                    out.add(up)
                    stack.append(up)
        return out

    def is_subcomplex(self, ids: Iterable[int]) -> bool:
        s = set(ids)
        return all(b in s for cid in s for b in self.cells[cid].boundary)

    def induced(self, vertices: Iterable[int], max_dim: int | None = None) -> set[int]:
        """Cells whose vertex sets lie inside ``vertices`` (the induced subcomplex)."""
        vs = set(vertices)
        top = self.dim if max_dim is None else max_dim
        return {
            cid for cid, c in enumerate(self.cells)
            if c.dim <= top and not c.region and vs.issuperset(c.vertices)
        }

    def facets(self, cid: int) -> tuple[int, ...]:
        return self.cells[cid].boundary

    def simplicity_violations(self) -> list[str]:
        """Loops or multiple cells (equal vertex sets in one dimension) among non-region cells."""
        out = []
        seen: dict[tuple[int, tuple[int, ...]], int] = {}
        for cid, c in enumerate(self.cells):
            if c.region:
                continue
            if c.dim > 0 and len(c.vertices) < c.dim + 1:
                out.append(f"cell {cid}: too few vertices for dimension {c.dim}")
            key = (c.dim, c.vertices)
            if key in seen:
                out.append(f"cells {seen[key]} and {cid}: multiple {c.dim}-cells on {c.vertices}")
            else:
                seen[key] = cid
        return out

    # --------------------------------------------------------------------- io

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "cells": [[c.dim, list(c.vertices), list(c.boundary)] for c in self.cells],
        }
        if self.regions:
            out["regions"] = self.regions
        return out

    @classmethod
    def from_json(cls, data) -> "CellComplex":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            raw = data["cells"]
        except (KeyError, TypeError):
            raise ComplexError("complex JSON needs a 'cells' list") from None
        regions = set(data.get("regions", []))
        cells = []
        for i, entry in enumerate(raw):
            try:
                d, vs, bd = entry
            except (TypeError, ValueError):
                raise ComplexError(f"cells[{i}]: expected [dim, vertices, boundary]") from None
            cells.append(Cell(int(d), tuple(sorted(int(v) for v in vs)), tuple(int(b) for b in bd), i in regions))
        cx = cls(tuple(cells))
        if "dim" in data and int(data["dim"]) != cx.dim:
            raise ComplexError(f"declared dim {data['dim']} but cells reach {cx.dim}")
        return cx


def face_vector(c: CellComplex) -> list[int]:
    return c.face_vector()


def incidence_degree(c: CellComplex, cid: int, j: int) -> int:
    """Number of j-cells incident to cell ``cid``; for j equal to its own
    dimension, the number of other j-cells sharing a facet with it (graph
    degree for vertices)."""
    if not 0 <= cid < len(c.cells):
        raise ComplexError(f"unknown cell id {cid}")
    if j < 0 or j > c.dim:
        raise ComplexError(f"dimension {j} outside 0..{c.dim}")
    i = c.cells[cid].dim
    if j < i:
        return sum(1 for x in c.closure([cid]) if c.cells[x].dim == j)
    if j > i:
        return sum(1 for x in c.star(cid) if c.cells[x].dim == j)
    if i == 0:
        return len(c.skeleton_graph.adj[c.cells[cid].vertices[0]])
    mine = set(c.cells[cid].boundary)
    return sum(
        1 for x in c.cells_of(i) if x != cid and mine.intersection(c.cells[x].boundary)
    )


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    pendant: tuple[int, ...]  # facets lying in fewer than two top cells


def is_closed(c: CellComplex, ambient_d: int | None = None) -> ClosureReport:
    top = c.dim if ambient_d is None else ambient_d - 1
    if top < 1:
        return ClosureReport(True, ())
    counts = {f: 0 for f in c.cells_of(top - 1)}
    for t in c.cells_of(top):
        if c.cells[t].region:
            continue
        for f in c.cells[t].boundary:
            counts[f] += 1
    pendant = tuple(sorted(f for f, k in counts.items() if k < 2))
    return ClosureReport(not pendant, pendant)

"""Bridges of cycles, ear decompositions and marked S-decompositions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import Graph, GraphError, HypothesisViolation, _norm, is_k_connected, is_separator


# -------------------------------------------------------------------- bridges

@dataclass(frozen=True)
class Bridge:
    host: tuple[int, ...]  # the cycle, as a cyclic vertex sequence
    internal_vertices: frozenset[int]
    attachments: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @property
    def k(self) -> int:
        return len(self.attachments)

    @property
    def trivial(self) -> bool:
        return not self.internal_vertices


def _check_cycle(g: Graph, c: Sequence[int]) -> None:
    if len(c) < 3 or len(set(c)) != len(c):
        raise GraphError("cycle must list at least 3 distinct vertices")
    for i, u in enumerate(c):
        v = c[(i + 1) % len(c)]
        if u not in g.adj or not g.has_edge(u, v):
            raise GraphError(f"not a cycle of the graph: missing edge {u}-{v}")


def cycle_edges(c: Sequence[int]) -> frozenset[tuple[int, int]]:
    return frozenset(_norm(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def bridges_of_cycle(g: Graph, c: Sequence[int]) -> list[Bridge]:
    _check_cycle(g, c)
    host = tuple(c)
    on_cycle = set(c)
    ce = cycle_edges(c)
    out = []
    rest = g.remove_vertices(on_cycle)
    for comp in rest.components():
        inner = set(comp)
        es = frozenset(e for e in g.edges if e[0] in inner or e[1] in inner)
        att = frozenset(x for e in es for x in e if x in on_cycle)
        out.append(Bridge(host, frozenset(inner), att, es))
    for e in g.sorted_edges():
        if e[0] in on_cycle and e[1] in on_cycle and e not in ce:
            out.append(Bridge(host, frozenset(), frozenset(e), frozenset([e])))
    return out


def _segments(c: Sequence[int], att: frozenset[int]) -> list[set[int]]:
    """Closed arcs of ``c`` between cyclically consecutive attachments."""
    pos = [i for i, v in enumerate(c) if v in att]
    if len(pos) == 1:
        return [set(c)]
    segs = []
    for j, start in enumerate(pos):
        end = pos[(j + 1) % len(pos)]
        seg, i = [c[start]], start
        while i != end:
            i = (i + 1) % len(c)
            seg.append(c[i])
        segs.append(set(seg))
    return segs


def _interleaved(c: Sequence[int], a: frozenset[int], b: frozenset[int]) -> bool:
    """True if some u, v in a and x, y in b alternate u, x, v, y around c."""
    pos = {v: i for i, v in enumerate(c)}
    for u, v in combinations(sorted(a, key=pos.get), 2):
        lo, hi = pos[u], pos[v]
        inside = [x for x in b if lo < pos[x] < hi]
        outside = [x for x in b if pos[x] < lo or pos[x] > hi]
        if inside and outside:
            return True
    return False


def classify_bridge_pair(b1: Bridge, b2: Bridge, c: Sequence[int]) -> str:
    """One of ``avoid``, ``skew``, ``equivalent-3-bridges`` or ``overlap-other``."""
    if b1.host != tuple(c) or b2.host != tuple(c):
        raise GraphError("bridges belong to a different host cycle")
    if any(b2.attachments <= s for s in _segments(c, b1.attachments)) or any(
        b1.attachments <= s for s in _segments(c, b2.attachments)
    ):
        return "avoid"
    if _interleaved(c, b1.attachments, b2.attachments):
        return "skew"
    if b1.attachments == b2.attachments and b1.k == 3:
        return "equivalent-3-bridges"
    return "overlap-other"


# ----------------------------------------------------------------------- ears

@dataclass(frozen=True)
class EarDecomposition:
    cycle: tuple[int, ...]
    ears: tuple[tuple[int, ...], ...]

    def stages(self) -> list[Graph]:
        verts = list(self.cycle)
        edges = set(cycle_edges(self.cycle))
        out = [Graph.from_edges(verts, edges)]
        for ear in self.ears:
            verts += [v for v in ear if v not in verts]
            edges |= {_norm(ear[i], ear[i + 1]) for i in range(len(ear) - 1)}
            out.append(Graph.from_edges(verts, edges))
        return out


def _shortest_path(g: Graph, src: int, targets: set[int], banned: set[int]) -> list[int] | None:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u in targets and u != src:
            path = [u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in sorted(g.adj[u]):
            if w in prev or w in banned:
                continue
            prev[w] = u
            if w in targets:
                path = [w]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            queue.append(w)
    return None


def ear_decomposition(g: Graph) -> EarDecomposition:
    if not is_k_connected(g, 2):
        raise HypothesisViolation("hypothesis violated: graph is not 2-connected")
    root = g.vertices[0]
    nb = min(g.adj[root])
    # shortest cycle through the edge root-nb
    path = _shortest_path(
        Graph(g.vertices, g.edges - {_norm(root, nb)}), nb, {root}, set()
    )
    cycle = tuple([root] + path[:-1])
    in_h = set(cycle)
    used = set(cycle_edges(cycle))
    ears = []
    while len(used) < g.m:
        e = next(e for e in g.sorted_edges() if e not in used and (e[0] in in_h or e[1] in in_h))
        u, v = e if e[0] in in_h else (e[1], e[0])
        if v in in_h:
            ear = (u, v)
        else:
            tail = _shortest_path(g, v, in_h - {u}, {u})
            ear = (u,) + tuple(tail)
        ears.append(ear)
        in_h.update(ear)
        used |= {_norm(ear[i], ear[i + 1]) for i in range(len(ear) - 1)}
    return EarDecomposition(cycle, tuple(ears))


def verify_ear_decomposition(g: Graph, dec: EarDecomposition) -> tuple[bool, str]:
    """Replay the stages; returns (ok, first violated clause or "")."""
    c = dec.cycle
    if len(c) < 3 or len(set(c)) != len(c):
        return False, "initial stage is not a cycle"
    for i in range(len(c)):
        if not g.has_edge(c[i], c[(i + 1) % len(c)]):
            return False, "initial stage is not a subgraph"
    verts = set(c)
    edges = set(cycle_edges(c))
    for j, ear in enumerate(dec.ears):
        if len(ear) < 2:
            return False, f"ear {j} is trivial"
        ends, interior = {ear[0], ear[-1]}, ear[1:-1]
        if not ends <= verts or ear[0] == ear[-1]:
            return False, f"ear {j} endpoints not distinct vertices of the current stage"
        if any(v in verts for v in interior) or len(set(interior)) != len(interior):
            return False, f"ear {j} interior meets the current stage"
        new = {_norm(ear[i], ear[i + 1]) for i in range(len(ear) - 1)}
        if any(not g.has_edge(*e) for e in new) or new & edges:
            return False, f"ear {j} uses an edge outside the graph or already present"
        verts |= set(interior)
        edges |= new
        if not is_k_connected(Graph.from_edges(verts, edges), 2):
            return False, f"stage {j + 1} is not 2-connected"
    if verts != set(g.vertices) or edges != set(g.edges):
        return False, "final stage differs from the graph"
    return True, ""


# -------------------------------------------------------- marked S-decompositions

@dataclass(frozen=True)
class MarkedSDecomposition:
    cut: tuple[int, ...]
    components: tuple[Graph, ...]
    marker_edges: frozenset[tuple[int, int]] = field(default=frozenset())

    def reconstruct(self) -> Graph:
        verts: set[int] = set()
        edges: set[tuple[int, int]] = set()
        for comp in self.components:
            verts.update(comp.vertices)
            edges.update(comp.edges)
        return Graph.from_edges(verts, edges - self.marker_edges)


def marked_s_decomposition(g: Graph, s) -> MarkedSDecomposition:
    cut = tuple(sorted(s))
    if not set(cut) <= set(g.vertices) or not is_separator(g, cut):
        raise GraphError("not a separator")
    clique = {_norm(u, v) for u, v in combinations(cut, 2)}
    marker = frozenset(clique - g.edges)
    comps = []
    for part in g.remove_vertices(cut).components():
        h = g.subgraph(set(part) | set(cut))
        comps.append(h.add_edges(clique))
    return MarkedSDecomposition(cut, tuple(comps), marker)

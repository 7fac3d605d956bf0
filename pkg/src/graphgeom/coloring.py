"""Vertex coloring: degeneracy-ordered greedy, exact DSATUR branch and bound,
exact average degrees and the layered audit of triangulated skeletons."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import CellComplex
from .graph import Graph, GraphError, bfs_layers
from .minors import has_clique_minor, has_complete_bipartite_minor
from .topology import certify_sphere

EXACT_MAX_VERTICES = 30


def frac(x: Fraction | int) -> str:
    """Exact rational as "p/q" (plain "p" for integers)."""
    return str(Fraction(x))


@dataclass(frozen=True)
class Coloring:
    assignment: dict[int, int]  # vertex -> color, colors start at 1
    palette_size: int

    def is_proper(self, g: Graph) -> bool:
        return all(self.assignment[u] != self.assignment[v] for u, v in g.edges) and set(
            self.assignment
        ) == set(g.vertices)

    def to_json(self) -> dict:
        return {"colors": {str(v): c for v, c in sorted(self.assignment.items())}, "k": self.palette_size}


def _make(assignment: dict[int, int]) -> Coloring:
    return Coloring(dict(sorted(assignment.items())), len(set(assignment.values())))


def degeneracy_order(g: Graph) -> list[int]:
    """Vertices in removal order: repeatedly take a minimum-degree vertex,
    lowest id first among ties."""
    deg = {v: len(ns) for v, ns in g.adj.items()}
    alive = set(g.vertices)
    order = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        order.append(v)
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return order


def degeneracy(g: Graph) -> int:
    best = 0
    removed: set[int] = set()
    for v in degeneracy_order(g):
        best = max(best, sum(1 for w in g.adj[v] if w not in removed))
        removed.add(v)
    return best


def degeneracy_greedy(g: Graph) -> Coloring:
    """Greedy coloring with the minimum-degree vertex colored last; each
    vertex sees at most degeneracy(g) colored neighbours."""
    colors: dict[int, int] = {}
    for v in reversed(degeneracy_order(g)):
        taken = {colors[w] for w in g.adj[v] if w in colors}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return _make(colors)


def _max_clique(g: Graph) -> list[int]:
    best: list[int] = []

    def grow(clique: list[int], cand: set[int]) -> None:
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        if len(clique) + len(cand) <= len(best):
            return
        for v in sorted(cand):
            grow(clique + [v], cand & g.adj[v])
            cand = cand - {v}
            if len(clique) + len(cand) <= len(best):
                return

    grow([], set(g.vertices))
    return sorted(best)


def exact_chromatic(g: Graph) -> tuple[int, Coloring]:
    """Chromatic number by DSATUR branch and bound.

    Branching vertex: highest saturation, then highest degree, then lowest
    id.  The search is seeded with a maximum clique (forced distinct colors)
    and the degeneracy-greedy coloring as the incumbent.
    """
    if g.n > EXACT_MAX_VERTICES:
        raise GraphError(f"instance too large: {g.n} > {EXACT_MAX_VERTICES} vertices")
    if g.n == 0:
        return 0, Coloring({}, 0)
    incumbent = degeneracy_greedy(g)
    best_k = incumbent.palette_size
    best = dict(incumbent.assignment)
    clique = _max_clique(g)
    lower = len(clique)
    if best_k == lower:
        return best_k, incumbent

    colors: dict[int, int] = {v: i + 1 for i, v in enumerate(clique)}
    # neighbour color counts per vertex for saturation
    seen: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    for v, c in colors.items():
        for w in g.adj[v]:
            seen[w][c] = seen[w].get(c, 0) + 1

    def pick() -> int:
        return min(
            (v for v in g.vertices if v not in colors),
            key=lambda v: (-len(seen[v]), -len(g.adj[v]), v),
        )

    def rec(used: int) -> bool:
        nonlocal best_k, best
        if len(colors) == g.n:
            best_k, best = used, dict(colors)
            return best_k == lower
        v = pick()
        for c in range(1, min(used + 1, best_k - 1) + 1):
            if c in seen[v]:
                continue
            colors[v] = c
            for w in g.adj[v]:
                seen[w][c] = seen[w].get(c, 0) + 1
            done = rec(max(used, c))
            for w in g.adj[v]:
                seen[w][c] -= 1
                if not seen[w][c]:
                    del seen[w][c]
            del colors[v]
            if done:
                return True
        return False

    rec(lower)
    return best_k, _make(best)


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise GraphError("empty graph")
    return Fraction(2 * g.m, g.n)


# ---------------------------------------------------------------- reports

@dataclass
class ChromaticBoundReport:
    d: int
    bound: int
    clique_minor: dict | None  # model JSON of K_{d+3}, when present
    bipartite_minor: dict | None  # model JSON of K_{3,d+1}, when present
    chi: int | None = None
    method: str | None = None  # "exact" or "degeneracy" (an upper bound)
    failed_hypotheses: list[str] = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return not self.failed_hypotheses

    @property
    def holds(self) -> bool | None:
        if not self.applicable or self.chi is None:
            return None
        return self.chi <= self.bound

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "bound": self.bound,
            "applicable": self.applicable,
            "failed_hypotheses": self.failed_hypotheses,
            "clique_minor": self.clique_minor,
            "bipartite_minor": self.bipartite_minor,
            "chi": self.chi,
            "method": self.method,
            "holds": self.holds,
        }


def verify_chromatic_bound(g: Graph, d: int) -> ChromaticBoundReport:
    """Check chi(g) <= d(d+1) when g has neither a K_{d+3} nor a K_{3,d+1} minor."""
    if d < 1:
        raise GraphError("d must be at least 1")
    km = has_clique_minor(g, d + 3)
    bm = has_complete_bipartite_minor(g, 3, d + 1)
    rep = ChromaticBoundReport(d, d * (d + 1), km and km.to_json(), bm and bm.to_json())
    if km is not None:
        rep.failed_hypotheses.append(f"K_{d + 3} minor present")
    if bm is not None:
        rep.failed_hypotheses.append(f"K_3,{d + 1} minor present")
    if rep.failed_hypotheses:
        return rep
    if g.n <= EXACT_MAX_VERTICES:
        rep.chi, rep.method = exact_chromatic(g)[0], "exact"
    else:
        rep.chi, rep.method = degeneracy_greedy(g).palette_size, "degeneracy"
    return rep


def is_triangulated(c: CellComplex) -> bool:
    """Every non-region cell of dimension i has exactly i+1 vertices."""
    return all(c.cells[x].region or len(c.cells[x].vertices) == c.cells[x].dim + 1 for x in range(len(c)))


def skeleton_average_degree_audit(c: CellComplex, d: int) -> dict:
    """Average degree of the 1-skeleton against d(d+1), plus BFS layer sizes
    and the sphere verdict of every layer from every basepoint."""
    g = c.skeleton_graph
    avg = average_degree(g)
    bound = d * (d + 1)
    layers = {}
    for u0 in g.vertices:
        try:
            ls = bfs_layers(g, u0)
        except GraphError:
            layers[str(u0)] = {"sizes": None, "layer_shapes": None}
            continue
        shapes = []
        for layer in ls[1:]:
            cert = certify_sphere(c, c.induced(layer, max_dim=d - 1), d - 1, ambient_checks=False)
            shapes.append(cert.verdict)
        layers[str(u0)] = {"sizes": [len(x) for x in ls], "layer_shapes": shapes}
    return {
        "d": d,
        "vertices": g.n,
        "edges": g.m,
        "average_degree": frac(avg),
        "bound": bound,
        "below_bound": avg < bound,
        "triangulated": is_triangulated(c),
        "layers": layers,
    }

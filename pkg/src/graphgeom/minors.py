"""Exact minor containment for small patterns, with branch-set witnesses.

The search rests on one fact: if G and H are connected, H is a minor of G
exactly when V(G) splits into |V(H)| connected parts whose quotient graph
contains H under some bijection.  Parts are grown along a BFS order of G with
restricted-growth labels, so every partition is visited once.  A part is
*closed* once no unassigned vertex is adjacent to it; from then on its vertex
set and its neighbouring parts are final, which is where most pruning happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import networkx as nx

from .graph import Graph, GraphError, _norm

MAX_PATTERN_VERTICES = 8


@dataclass(frozen=True)
class MinorModel:
    pattern: Graph
    branch_sets: dict[int, tuple[int, ...]]
    witness_edges: dict[tuple[int, int], tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "branch_sets": {str(h): list(vs) for h, vs in sorted(self.branch_sets.items())},
            "witness_edges": {
                f"{u}-{v}": list(e) for (u, v), e in sorted(self.witness_edges.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "MinorModel":
        from .graph import parse_json_graph

        try:
            pattern = parse_json_graph(data["pattern"])
            bs = {int(k): tuple(int(x) for x in v) for k, v in data["branch_sets"].items()}
            we = {}
            for k, e in data["witness_edges"].items():
                u, v = (int(x) for x in k.split("-"))
                we[_norm(u, v)] = (int(e[0]), int(e[1]))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise GraphError(f"malformed minor model: {exc}") from None
        return cls(pattern, bs, we)


# ------------------------------------------------------------------ patterns

def clique_pattern(t: int) -> Graph:
    return Graph.from_edges(t, combinations(range(t), 2))


def bipartite_pattern(s: int, t: int) -> Graph:
    return Graph.from_edges(s + t, [(a, b) for a in range(s) for b in range(s, s + t)])


# -------------------------------------------------------------- verification

def verify_minor_model(g: Graph, model: MinorModel) -> tuple[bool, str]:
    """Check disjointness, connectivity and adjacency, in that order."""
    h = model.pattern
    for hv, vs in model.branch_sets.items():
        if hv not in h.adj:
            raise GraphError(f"branch set for unknown pattern vertex {hv}")
        for v in vs:
            if v not in g.adj:
                raise GraphError(f"branch set {hv} references unknown vertex {v}")
    for (a, b), (u, v) in model.witness_edges.items():
        if a not in h.adj or b not in h.adj:
            raise GraphError(f"witness for unknown pattern edge {a}-{b}")
        if u not in g.adj or v not in g.adj:
            raise GraphError(f"witness edge {u}-{v} references unknown vertex")
    if set(model.branch_sets) != set(h.vertices):
        return False, "disjointness"  # a pattern vertex has no branch set
    owner: dict[int, int] = {}
    for hv, vs in model.branch_sets.items():
        if not vs:
            return False, "disjointness"
        for v in vs:
            if v in owner or len(set(vs)) != len(vs):
                return False, "disjointness"
            owner[v] = hv
    for vs in model.branch_sets.values():
        if not g.subgraph(vs).is_connected():
            return False, "connectivity"
    for a, b in h.sorted_edges():
        w = model.witness_edges.get((a, b))
        if w is None or not g.has_edge(*w):
            return False, "adjacency"
        u, v = w
        if not ((owner.get(u) == a and owner.get(v) == b) or (owner.get(u) == b and owner.get(v) == a)):
            return False, "adjacency"
    return True, ""


def _model_from_parts(g: Graph, h: Graph, parts: dict[int, set[int]]) -> MinorModel:
    """Attach witness edges (least G-edge between the two branch sets)."""
    owner = {v: hv for hv, vs in parts.items() for v in vs}
    witness = {}
    for u, v in g.sorted_edges():
        a, b = owner.get(u), owner.get(v)
        if a is None or b is None or a == b:
            continue
        key = _norm(a, b)
        if key in h.edges and key not in witness:
            witness[key] = (u, v) if a < b else (v, u)
    return MinorModel(h, {hv: tuple(sorted(vs)) for hv, vs in sorted(parts.items())}, witness)


# -------------------------------------------------------------- reductions

def _reduce(g: Graph, h: Graph) -> tuple[Graph, list[tuple[int, int | None]]]:
    """Shrink G without changing whether H is a minor.

    Isolated vertices go when H has none, leaves when H has minimum degree 2,
    and degree-2 vertices are suppressed when H has minimum degree 3.  The
    history lists (removed vertex, vertex it merged into or None).
    """
    hmin = min((h.degree(v) for v in h.vertices), default=0)
    adj = {v: set(ns) for v, ns in g.adj.items()}
    history: list[tuple[int, int | None]] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            deg = len(adj[v])
            if deg >= hmin or deg > 2:
                continue
            ns = sorted(adj[v])
            for w in ns:
                adj[w].discard(v)
            del adj[v]
            if deg == 2 and ns[1] not in adj[ns[0]]:
                u, w = ns
                adj[u].add(w)
                adj[w].add(u)
                history.append((v, u))
            else:
                history.append((v, None))
            changed = True
    edges = {_norm(u, w) for u in adj for w in adj[u]}
    return Graph.from_edges(sorted(adj), edges), history


def _expand(parts: dict[int, set[int]], history: list[tuple[int, int | None]]) -> dict[int, set[int]]:
    owner = {v: hv for hv, vs in parts.items() for v in vs}
    for v, into in reversed(history):
        if into is not None and into in owner:
            owner[v] = owner[into]
            parts[owner[into]].add(v)
    return parts


# -------------------------------------------------------------- core search

def _degeneracy(g: Graph) -> int:
    deg = {v: len(ns) for v, ns in g.adj.items()}
    alive = set(g.vertices)
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return best


def _quotient_embeds(h: Graph, qadj: list[int], t: int) -> list[int] | None:
    """Bijection pattern vertex -> part index mapping every H-edge onto a
    quotient edge, or None.  ``qadj`` holds part adjacency bitmasks."""
    order = sorted(h.vertices, key=lambda v: (-h.degree(v), v))
    hidx = {v: i for i, v in enumerate(order)}
    need = [[hidx[w] for w in h.adj[v] if hidx[w] < hidx[v]] for v in order]
    hdeg = [h.degree(v) for v in order]
    qdeg = [bin(m).count("1") for m in qadj]
    image = [-1] * t
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == t:
            return True
        for p in range(t):
            if used >> p & 1 or qdeg[p] < hdeg[i]:
                continue
            if all(qadj[p] >> image[j] & 1 for j in need[i]):
                image[i] = p
                used |= 1 << p
                if place(i + 1):
                    return True
                used &= ~(1 << p)
        return False

    if not place(0):
        return None
    return [image[hidx[v]] for v in sorted(h.vertices)]


def _partition_search(
    g: Graph, h: Graph, allow_unused: bool
) -> dict[int, set[int]] | None:
    """Labels every vertex of G with a part (or 'unused' when allowed) and
    returns branch sets keyed by pattern vertex."""
    t = h.n
    # processing order: BFS from the smallest vertex of each component
    order: list[int] = []
    seen: set[int] = set()
    for comp in g.components():
        start = comp[0]
        seen.add(start)
        queue = [start]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    nb = [0] * n
    for v in order:
        for w in g.adj[v]:
            nb[pos[v]] |= 1 << pos[w]
    is_clique = h.m == t * (t - 1) // 2

    part_mask = [0] * t
    part_nb = [0] * t
    closed = [False] * t
    label = [-1] * n
    result: list[dict[int, set[int]]] = []

    def connected(mask: int) -> bool:
        low = mask & -mask
        reach = low
        frontier = low
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= nb[b.bit_length() - 1]
                f ^= b
            grow &= mask & ~reach
            reach |= grow
            frontier = grow
        return reach == mask

    def stranded(q: int, free: int) -> bool:
        # some component of the part can no longer reach the rest of it
        mask = part_mask[q]
        if connected(mask):
            return False
        rest = mask
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                grow = 0
                f = frontier
                while f:
                    b = f & -f
                    grow |= nb[b.bit_length() - 1]
                    f ^= b
                grow &= mask & ~comp
                comp |= grow
                frontier = grow
            touch = 0
            f = comp
            while f:
                b = f & -f
                touch |= nb[b.bit_length() - 1]
                f ^= b
            if not touch & free:
                return True
            rest &= ~comp
        return False

    full = (1 << t) - 1
    memo: dict[tuple[int, ...], bool] = {}

    def still_possible(used_labels: int) -> bool:
        # a closed part's neighbouring parts are final, so each non-adjacent
        # pair involving a closed part is a permanent non-edge of the quotient
        possible = [full & ~(1 << p) for p in range(t)]
        for p in range(used_labels):
            if not closed[p]:
                continue
            for q in range(t):
                if q != p and not (q < used_labels and part_nb[p] & part_mask[q]):
                    possible[p] &= ~(1 << q)
                    possible[q] &= ~(1 << p)
        key = tuple(possible)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = _quotient_embeds(h, possible, t) is not None
        return hit

    def close_check(p: int, used_labels: int) -> bool:
        if not connected(part_mask[p]):
            return False
        if is_clique:
            # parts yet to be opened can never touch a closed part
            return all(q == p or part_nb[p] & part_mask[q] for q in range(used_labels)) and used_labels == t
        return True

    def rec(i: int, used_labels: int) -> bool:
        if used_labels + (n - i) < t:
            return False
        if i == n:
            if used_labels < t:
                return False
            qadj = [0] * t
            for p in range(t):
                for q in range(t):
                    if q != p and part_nb[p] & part_mask[q]:
                        qadj[p] |= 1 << q
            img = _quotient_embeds(h, qadj, t)
            if img is None:
                return False
            parts = {hv: set() for hv in sorted(h.vertices)}
            hv_of = {p: hv for hv, p in zip(sorted(h.vertices), img)}
            for j, lab in enumerate(label):
                if lab >= 0:
                    parts[hv_of[lab]].add(order[j])
            result.append(parts)
            return True
        bit = 1 << i
        unassigned_after = ((1 << n) - 1) & ~((1 << (i + 1)) - 1)
        choices = [p for p in range(used_labels) if not closed[p]]
        if used_labels < t:
            choices.append(used_labels)
        if allow_unused:
            choices.append(-1)
        for p in choices:
            label[i] = p
            new_used = used_labels + 1 if p == used_labels else used_labels
            saved = None
            if p >= 0:
                saved = (part_mask[p], part_nb[p])
                part_mask[p] |= bit
                part_nb[p] |= nb[i]
            # parts that may have just closed: v's own part and parts adjacent to v
            newly: list[int] = []
            ok = True
            for q in range(new_used):
                if closed[q]:
                    continue
                if q != p and not (part_nb[q] & bit):
                    continue
                if part_nb[q] & unassigned_after == 0:
                    if not close_check(q, new_used):
                        ok = False
                        break
                    closed[q] = True
                    newly.append(q)
                elif stranded(q, unassigned_after):
                    ok = False
                    break
            if ok and newly and not is_clique and not still_possible(new_used):
                ok = False
            if ok and rec(i + 1, new_used):
                return True
            for q in newly:
                closed[q] = False
            if p >= 0:
                part_mask[p], part_nb[p] = saved
            label[i] = -1
        return False

    # closure checks look at labels < used_labels only; parts opened later are
    # disjoint from a closed part's neighbourhood by construction
    if rec(0, 0):
        return result[0]
    return None


def has_minor(g: Graph, h: Graph) -> MinorModel | None:
    """A verified model of H in G, or None if H is not a minor of G."""
    if h.n > MAX_PATTERN_VERTICES:
        raise GraphError(f"pattern has {h.n} vertices; at most {MAX_PATTERN_VERTICES} supported")
    if h.n == 0:
        return MinorModel(h, {}, {})
    if h.n > g.n or h.m > g.m:
        return None
    hc = h.canonical()
    back = dict(zip(range(h.n), h.vertices))
    found = _search(g, hc)
    if found is None:
        return None
    parts = {back[k]: v for k, v in found.items()}
    model = _model_from_parts(g, h, parts)
    ok, why = verify_minor_model(g, model)
    if not ok:  # pragma: no cover - guarded by the test suite
        raise AssertionError(f"minor search produced an invalid model ({why})")
    return model


def _search(g: Graph, h: Graph) -> dict[int, set[int]] | None:
    if not h.is_connected():
        return _partition_search(g, h, allow_unused=True)
    for comp in g.components():
        if len(comp) < h.n:
            continue
        sub = g.subgraph(comp)
        if sub.m - sub.n + h.n < h.m:
            continue  # a partition into h.n parts leaves too few crossing edges
        red, history = _reduce(sub, h)
        if red.n < h.n or red.m - red.n + h.n < h.m:
            continue
        if h.n >= 4 and _treewidth_upper(red) < _degeneracy(h):
            continue
        found = _partition_search(red, h, allow_unused=False)
        if found is not None:
            return _expand(found, history)
    return None


def _treewidth_upper(g: Graph) -> int:
    width, _ = nx.algorithms.approximation.treewidth_min_fill_in(g.to_networkx())
    return width


def has_clique_minor(g: Graph, t: int) -> MinorModel | None:
    if t < 1:
        raise GraphError("t must be at least 1")
    if g.m < t * (t - 1) // 2:
        return None
    return has_minor(g, clique_pattern(t))


def has_complete_bipartite_minor(g: Graph, s: int, t: int) -> MinorModel | None:
    if s < 1 or t < 1:
        raise GraphError("s and t must be at least 1")
    return has_minor(g, bipartite_pattern(s, t))


# ------------------------------------------------------------------ sampler

def mader_bound(n: int, d: int) -> int:
    """Most edges an n-vertex graph can have without a K_{d+3} minor (n >= d+2)."""
    return (d + 1) * n - (d + 2) * (d + 1) // 2


def minor_free_sampler(
    n: int,
    d: int,
    seed: int,
    budget: int,
    attempts: int | None = None,
    on_sample: Callable[[Graph], None] | None = None,
) -> list[Graph]:
    """Random n-vertex graphs with neither a K_{d+3} nor a K_{3,d+1} minor.

    Each attempt draws an edge count uniformly between n-1 and the extremal
    bound for K_{d+3}-minor-free graphs, then a uniform edge set of that size;
    the graph is kept when both minor searches come back empty.
    """
    from .generators import rng

    if n > 14:
        raise GraphError("sampler is limited to 14 vertices")
    if d < 2:
        raise GraphError("d must be at least 2")
    r = rng(seed)
    all_edges = list(combinations(range(n), 2))
    hi = min(len(all_edges), max(mader_bound(n, d), 0))
    lo = min(max(n - 1, 0), hi)
    out: list[Graph] = []
    tries = attempts if attempts is not None else 20 * budget
    for _ in range(tries):
        if len(out) >= budget:
            break
        m = int(r.integers(lo, hi + 1))
        pick = r.choice(len(all_edges), size=m, replace=False) if m else []
        g = Graph.from_edges(n, [all_edges[int(j)] for j in sorted(pick)])
        if has_clique_minor(g, d + 3) is None and has_complete_bipartite_minor(g, 3, d + 1) is None:
            out.append(g)
            if on_sample is not None:
                on_sample(g)
    return out

"""Simple undirected graphs and the connectivity machinery built on them."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx


class GraphError(ValueError):
    pass


class HypothesisViolation(GraphError):
    """An operation's standing hypothesis (connectivity, cut, ...) does not hold."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            if u > v:
                raise GraphError(f"edge {(u, v)} not normalized")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {(u, v)} references unknown vertex")

    @classmethod
    def from_edges(cls, n_or_vertices, edges: Iterable[tuple[int, int]]) -> "Graph":
        if isinstance(n_or_vertices, int):
            vertices = tuple(range(n_or_vertices))
        else:
            vertices = tuple(sorted(n_or_vertices))
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at {u}")
            es.add(_norm(u, v))
        return cls(vertices, frozenset(es))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        return cls.from_edges(list(g.nodes), g.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(sorted(self.edges))
        return g

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        ks = set(keep)
        return Graph(
            tuple(v for v in self.vertices if v in ks),
            frozenset(e for e in self.edges if e[0] in ks and e[1] in ks),
        )

    def remove_vertices(self, drop: Iterable[int]) -> "Graph":
        ds = set(drop)
        return self.subgraph(v for v in self.vertices if v not in ds)

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.vertices, self.edges | {_norm(u, v) for u, v in extra})

    def canonical(self) -> "Graph":
        """Relabel vertices densely to 0..n-1 preserving order."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        return Graph(
            tuple(range(self.n)),
            frozenset(_norm(idx[u], idx[v]) for u, v in self.edges),
        )

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in sorted(self.adj[u]):
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def to_json(self) -> dict:
        g = self.canonical() if self.vertices != tuple(range(self.n)) else self
        return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


# ---------------------------------------------------------------- file formats

def parse_edge_list(text: str) -> Graph:
    """Parse the ``p graph <n> <m>`` header format; errors carry line numbers."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", "c ")):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "graph":
                raise GraphError(f"line {lineno}: malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if n is None:
            raise GraphError(f"line {lineno}: edge before header")
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"line {lineno}: loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(e)
        edges.append(e)
    if n is None:
        raise GraphError("missing 'p graph <n> <m>' header")
    if m != len(edges):
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def parse_json_graph(data) -> Graph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["n"])
        raw = data["edges"]
    except (KeyError, TypeError, ValueError):
        raise GraphError("JSON graph needs keys 'n' and 'edges'") from None
    seen: set[tuple[int, int]] = set()
    for i, pair in enumerate(raw):
        if len(pair) != 2:
            raise GraphError(f"edges[{i}]: expected a pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edges[{i}]: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"edges[{i}]: loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise GraphError(f"edges[{i}]: duplicate edge {u} {v}")
        seen.add(e)
    return Graph.from_edges(n, seen)


def format_edge_list(g: Graph) -> str:
    g = g.canonical()
    lines = [f"p graph {g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_json_graph(text)
    return parse_edge_list(text)


# ---------------------------------------------------------------- connectivity

def vertex_connectivity(g: Graph) -> int:
    """kappa(g), with kappa(K_n) = n - 1 and 0 for disconnected graphs."""
    if g.n == 0:
        raise GraphError("empty graph")
    if g.n == 1:
        return 0
    if not g.is_connected():
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    return nx.node_connectivity(g.to_networkx())


def is_k_connected(g: Graph, k: int) -> bool:
    return g.n >= k + 1 and vertex_connectivity(g) >= k


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """G/e: the earlier endpoint (in vertex order) survives and absorbs the other."""
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"no such edge {e}")
    order = {x: i for i, x in enumerate(g.vertices)}
    keep, drop = (u, v) if order[u] < order[v] else (v, u)
    edges = set()
    for a, b in g.edges:
        a = keep if a == drop else a
        b = keep if b == drop else b
        if a != b:
            edges.add(_norm(a, b))
    return Graph(tuple(x for x in g.vertices if x != drop), frozenset(edges))


def find_contractible_edge(g: Graph, k: int) -> tuple[int, int] | None:
    """First edge (sorted order) whose contraction leaves a k-connected graph.

    For |V| = k + 1 or k + 2 with g complete no such edge exists, which is why
    the useful regime is |V| >= k + 3.
    """
    if not is_k_connected(g, k):
        raise HypothesisViolation(f"hypothesis violated: graph is not {k}-connected")
    for e in g.sorted_edges():
        if is_k_connected(contract_edge(g, e), k):
            return e
    return None


def bfs_layers(g: Graph, u0: int) -> list[list[int]]:
    """Layer i holds the vertices at distance exactly i from ``u0``."""
    if u0 not in g.adj:
        raise GraphError(f"unknown vertex {u0}")
    dist = {u0: 0}
    queue = deque([u0])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    missing = [v for v in g.vertices if v not in dist]
    if missing:
        raise GraphError(f"graph is disconnected; unreachable from {u0}: {missing}")
    layers: list[list[int]] = [[] for _ in range(max(dist.values()) + 1)]
    for v in g.vertices:
        layers[dist[v]].append(v)
    return layers


def is_separator(g: Graph, s: Iterable[int]) -> bool:
    rest = g.remove_vertices(s)
    return rest.n > 0 and not rest.is_connected()


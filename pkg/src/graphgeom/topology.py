"""Exact homology, Euler characteristic, edge-path group presentations and
sphere certificates.  Only GF(2) and rational arithmetic is used."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Iterable

from .complex import CellComplex, ComplexError

DEFAULT_STEP_BUDGET = 10_000


# --------------------------------------------------------- boundary matrices

@dataclass(frozen=True)
class ChainComplexData:
    """``columns[k][j]`` maps row cell ids of dimension k-1 to the signed
    coefficient of the boundary of the j-th k-cell (in ``cells[k]`` order)."""

    cells: dict[int, list[int]]
    columns: dict[int, list[dict[int, int]]]

    def dense(self, k: int, mod2: bool = False) -> list[list[int]]:
        rows = self.cells.get(k - 1, [])
        pos = {r: i for i, r in enumerate(rows)}
        mat = [[0] * len(self.columns.get(k, [])) for _ in rows]
        for j, col in enumerate(self.columns.get(k, [])):
            for r, a in col.items():
                mat[pos[r]][j] = a % 2 if mod2 else a
        return mat


def _orient(c: CellComplex, cid: int, signed: dict[int, dict[int, int]]) -> dict[int, int]:
    cell = c.cells[cid]
    if cell.dim == 1:
        lo, hi = (c.vertex_id[v] for v in cell.vertices)
        return {hi: 1, lo: -1}
    # coefficient signs chosen so the boundary of the boundary cancels
    touching: dict[int, list[int]] = {}
    for f in cell.boundary:
        for g in signed[f]:
            touching.setdefault(g, []).append(f)
    for g, fs in touching.items():
        if len(fs) != 2:
            raise ComplexError(
                f"inconsistent boundary data at cell {cid}: face {g} meets {len(fs)} facets"
            )
    sign = {cell.boundary[0]: 1}
    queue = deque([cell.boundary[0]])
    while queue:
        f = queue.popleft()
        for g, a in signed[f].items():
            other = next(x for x in touching[g] if x != f)
            want = -sign[f] * a * signed[other][g]
            if other in sign:
                if sign[other] != want:
                    raise ComplexError(f"inconsistent boundary data at cell {cid}: non-orientable")
            else:
                sign[other] = want
                queue.append(other)
    if len(sign) != len(cell.boundary):
        raise ComplexError(f"inconsistent boundary data at cell {cid}: disconnected boundary")
    return sign


def boundary_matrices(c: CellComplex) -> ChainComplexData:
    signed: dict[int, dict[int, int]] = {}
    cells = {k: list(c.cells_of(k)) for k in range(c.dim + 1)}
    columns: dict[int, list[dict[int, int]]] = {0: [{} for _ in cells.get(0, [])]}
    for k in range(1, c.dim + 1):
        cols = []
        for cid in cells[k]:
            signed[cid] = _orient(c, cid, signed)
            cols.append(signed[cid])
        columns[k] = cols
    for cid in c.cells_of(0):
        signed[cid] = {}
    # d o d = 0 check, over the integers (hence over GF(2) and Q)
    for k in range(2, c.dim + 1):
        for j, col in enumerate(columns[k]):
            acc: dict[int, int] = {}
            for f, a in col.items():
                for g, b in signed[f].items():
                    acc[g] = acc.get(g, 0) + a * b
            bad = [g for g, v in acc.items() if v]
            if bad:
                raise ComplexError(f"inconsistent boundary data at cell {cells[k][j]}")
    return ChainComplexData(cells, columns)


def rank_gf2(columns: list[dict[int, int]]) -> int:
    basis: dict[int, int] = {}  # leading bit -> row
    rank = 0
    index: dict[int, int] = {}
    for col in columns:
        v = 0
        for r, a in col.items():
            if a % 2:
                bit = index.setdefault(r, len(index))
                v ^= 1 << bit
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                rank += 1
                break
    return rank


def rank_rational(columns: list[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}  # pivot row id -> reduced vector
    order: list[int] = []
    for col in columns:
        v = {r: Fraction(a) for r, a in col.items() if a}
        for p in order:
            if p in v:
                factor = v[p] / pivots[p][p]
                for r, a in pivots[p].items():
                    nv = v.get(r, 0) - factor * a
                    if nv:
                        v[r] = nv
                    else:
                        v.pop(r, None)
        if v:
            p = min(v)
            pivots[p] = v
            order.append(p)
    return len(order)


def betti_numbers(c: CellComplex, coefficients: str = "rational") -> list[int]:
    if coefficients not in ("rational", "GF2"):
        raise ValueError("coefficients must be 'rational' or 'GF2'")
    data = boundary_matrices(c)
    rank = rank_rational if coefficients == "rational" else rank_gf2
    ranks = {k: rank(data.columns.get(k, [])) for k in range(c.dim + 2)}
    ranks[0] = 0
    return [
        len(data.cells.get(k, [])) - ranks[k] - ranks.get(k + 1, 0)
        for k in range(c.dim + 1)
    ]


def euler_characteristic(c: CellComplex) -> int:
    return sum((-1) ** i * n for i, n in enumerate(c.face_vector()))


# ------------------------------------------------------------ fundamental group

@dataclass
class Pi1Report:
    verdict: str  # "yes" | "no" | "unknown"
    generators: int
    relators: int
    remaining_generators: int
    remaining_relators: int
    steps: int
    budget_exhausted: bool
    h1_trivial: bool


def _spanning_tree(c: CellComplex) -> set[tuple[int, int]]:
    g = c.skeleton_graph
    if not g.is_connected():
        raise ComplexError("complex is disconnected")
    root = g.vertices[0]
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                queue.append(w)
    return tree


def _boundary_cycle(c: CellComplex, cid: int) -> list[int]:
    """Vertices of a 2-cell's boundary in cyclic order."""
    nbrs: dict[int, list[int]] = {}
    for e in c.cells[cid].boundary:
        u, v = c.cells[e].vertices
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nbrs.values()):
        raise ComplexError(f"2-cell {cid} boundary is not a cycle")
    start = min(nbrs)
    walk, prev, cur = [start], None, start
    while True:
        nxt = min(x for x in nbrs[cur] if x != prev) if prev is None else next(
            x for x in nbrs[cur] if x != prev
        )
        if nxt == start:
            break
        walk.append(nxt)
        prev, cur = cur, nxt
    if len(walk) != len(nbrs):
        raise ComplexError(f"2-cell {cid} boundary is not a single cycle")
    return walk


def _reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def edge_path_presentation(c: CellComplex) -> tuple[int, list[list[int]]]:
    """Generators 1..g (non-tree edges, oriented low -> high) and relator words
    (signed generator indices), one per 2-cell."""
    tree = _spanning_tree(c)
    gen: dict[tuple[int, int], int] = {}
    for e in sorted(c.edge_id):
        if e not in tree:
            gen[e] = len(gen) + 1
    relators = []
    for cid in c.cells_of(2):
        walk = _boundary_cycle(c, cid)
        word = []
        for a, b in zip(walk, walk[1:] + walk[:1]):
            e = (min(a, b), max(a, b))
            if e in gen:
                word.append(gen[e] if a < b else -gen[e])
        relators.append(word)
    return len(gen), relators


def _smith_trivial(ngen: int, relators: list[list[int]]) -> bool:
    """True iff the abelianized presentation presents the trivial group."""
    rows = []
    for w in relators:
        row = [0] * ngen
        for x in w:
            row[abs(x) - 1] += 1 if x > 0 else -1
        if any(row):
            rows.append(row)
    if ngen == 0:
        return True
    mat = [r[:] for r in rows]
    ncols = ngen
    r0 = 0
    for col in range(ncols):
        # bring a gcd into the pivot position by repeated Euclid steps
        while True:
            nz = [(abs(mat[i][col]), i) for i in range(r0, len(mat)) if mat[i][col]]
            if not nz:
                return False  # free Z summand
            _, p = min(nz)
            mat[r0], mat[p] = mat[p], mat[r0]
            piv = mat[r0][col]
            done = True
            for i in range(r0 + 1, len(mat)):
                q = mat[i][col] // piv
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r0])]
                if mat[i][col]:
                    done = False
            if done:
                break
        if abs(mat[r0][col]) != 1:
            return False
        r0 += 1
    return True


def pi1_trivial(c: CellComplex, step_budget: int = DEFAULT_STEP_BUDGET) -> Pi1Report:
    ngen, relators = edge_path_presentation(c)
    h1_trivial = _smith_trivial(ngen, relators)
    if not h1_trivial:
        return Pi1Report("no", ngen, len(relators), ngen, len(relators), 0, False, False)
    rels = [r for r in (_reduce(w) for w in relators) if r]
    live = set(range(1, ngen + 1))
    steps = 0
    exhausted = False
    while live:
        if steps >= step_budget:
            exhausted = True
            break
        best = None
        for idx, w in enumerate(rels):
            counts: dict[int, int] = {}
            for x in w:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            singles = sorted(g for g, k in counts.items() if k == 1)
            if singles and (best is None or len(w) < len(rels[best[0]])):
                best = (idx, singles[0])
        if best is None:
            break
        idx, g = best
        w = rels.pop(idx)
        pos = next(i for i, x in enumerate(w) if abs(x) == g)
        rotated = w[pos:] + w[:pos]
        rest = rotated[1:]
        # rotated = g^e * rest = 1, so g = rest^-1 when e = 1, g = rest when e = -1
        inv = [-x for x in reversed(rest)]
        image = inv if rotated[0] > 0 else rest
        new_rels = []
        for r in rels:
            out = []
            for x in r:
                if x == g:
                    out.extend(image)
                    steps += 1
                elif x == -g:
                    out.extend(-y for y in reversed(image))
                    steps += 1
                else:
                    out.append(x)
            out = _reduce(out)
            if out:
                new_rels.append(out)
        rels = new_rels
        live.discard(g)
        steps += 1
        # generators appearing in no relator are free factors: H1 was checked, so none remain
    verdict = "yes" if not live else "unknown"
    return Pi1Report(
        verdict, ngen, len(relators), len(live), len(rels), steps, exhausted, h1_trivial
    )


# -------------------------------------------------------- sphere certificates

@dataclass
class SphereCertificate:
    cells: tuple[int, ...]
    dimension: int
    pseudo_manifold: bool
    betti_profile_matches_S_i: bool
    pi1_trivial: str  # "yes" | "no" | "unknown" | "vacuous"
    euler_matches: bool
    induced: bool
    complement_connected: bool
    verdict: str  # "certified" | "refuted" | "inconclusive"

    def to_json(self) -> dict:
        out = asdict(self)
        out["cells"] = list(self.cells)
        return out


def _pseudo_manifold(sub: CellComplex, i: int) -> bool:
    if sub.dim != i or not sub.cells_of(i):
        return False
    tops = sub.cells_of(i)
    if sub.closure(tops) != set(range(len(sub))):
        return False
    count: dict[int, list[int]] = {f: [] for f in sub.cells_of(i - 1)}
    for t in tops:
        for f in sub.cells[t].boundary:
            count[f].append(t)
    if any(len(ts) != 2 for ts in count.values()):
        return False
    # top cells connected through shared facets
    adj: dict[int, set[int]] = {t: set() for t in tops}
    for a, b in count.values():
        adj[a].add(b)
        adj[b].add(a)
    seen = {tops[0]}
    stack = [tops[0]]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(tops)


def certify_sphere(
    c: CellComplex,
    cells: Iterable[int],
    i: int,
    ambient_checks: bool = True,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> SphereCertificate:
    """Evidence that the subcomplex on ``cells`` is an induced i-sphere of ``c``.

    With ``ambient_checks`` off, the induced-subcomplex and complement
    connectivity conditions are skipped (recorded as True).
    """
    ids = tuple(sorted(set(cells)))
    if i < 1:
        raise ValueError("sphere dimension must be at least 1")
    if any(not 0 <= x < len(c) for x in ids):
        raise ComplexError("cell id out of range")
    if not c.is_subcomplex(ids):
        raise ComplexError("not a subcomplex")
    sub, _ = c.restrict(ids)
    pm = _pseudo_manifold(sub, i)
    target = [1] + [0] * (i - 1) + [1]
    try:
        betti_ok = (
            betti_numbers(sub, "rational") == target and betti_numbers(sub, "GF2") == target
        )
    except ComplexError:
        betti_ok = False
    euler_ok = euler_characteristic(sub) == 1 + (-1) ** i
    if i == 1:
        pi1 = "vacuous"
    elif not sub.skeleton_graph.is_connected():
        pi1 = "no"
    else:
        try:
            pi1 = pi1_trivial(sub, step_budget).verdict
        except ComplexError:
            pi1 = "unknown"
    verts = {c.cells[x].vertices[0] for x in ids if c.cells[x].dim == 0}
    if ambient_checks:
        induced = c.induced(verts, max_dim=i) == {x for x in ids if not c.cells[x].region}
        rest = c.skeleton_graph.remove_vertices(verts)
        complement = rest.n == 0 or rest.is_connected()
    else:
        induced = complement = True
    hard = [pm, betti_ok, euler_ok, induced, complement]
    if all(hard) and pi1 in ("yes", "vacuous"):
        verdict = "certified"
    elif not all(hard) or pi1 == "no":
        verdict = "refuted"
    else:
        verdict = "inconclusive"
    return SphereCertificate(ids, i, pm, betti_ok, pi1, euler_ok, induced, complement, verdict)

"""Weight bookkeeping for higher-dimensional discharging, cell colorings in
which every cell one dimension up sees two colors, and the dual graph.

All weights are exact ``Fraction`` values.  A complex passed in here is a
closed region-complete complex: it carries cells up to dimension d, with the
d-cells standing for the complementary regions of the embedded part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import CellComplex, ComplexError

STAGES = ("initial", "after_R1", "after_R2")
R1_SCOPES = ("joint", "per-dim")
COLOR_MAX_CELLS = 64


class DischargeError(ComplexError):
    pass


def _frac(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class DischargeParams:
    a: int
    b: int
    d: int

    @property
    def c(self) -> int:
        return 2 * self.a + self.d * self.b

    @property
    def parity(self) -> str:
        return "odd" if self.d % 2 else "even"

    @property
    def expected_total(self) -> int:
        return self.c * (-1 + (-1) ** (self.d + 1))

    def low_sign(self, i: int) -> int:
        """Sign of the weight c carried by an i-cell, i <= d-3."""
        return (-1) ** i if self.d % 2 else (-1) ** (i + 1)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "parity": self.parity}


@dataclass(frozen=True)
class WeightLedger:
    stage: str
    weights: dict[int, Fraction]
    params: DischargeParams
    dims: dict[int, int] = field(default_factory=dict, repr=False)  # cell id -> dimension
    r1_scope: str | None = None

    @property
    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def by_dimension(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for cid, w in self.weights.items():
            out[self.dims[cid]] = out.get(self.dims[cid], Fraction(0)) + w
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        out = {
            "stage": self.stage,
            "params": self.params.to_json(),
            "total": _frac(self.total),
            "by_dimension": {str(i): _frac(w) for i, w in self.by_dimension().items()},
            "weights": {str(cid): _frac(w) for cid, w in sorted(self.weights.items())},
        }
        if self.r1_scope is not None:
            out["r1_scope"] = self.r1_scope
        return out


# ------------------------------------------------------------- preflight

def _top_incidences(c: CellComplex, d: int) -> dict[int, list[int]]:
    """For each (d-1)-cell, the d-cells having it as a facet."""
    out = {f: [] for f in c.cells_of(d - 1)}
    for t in c.cells_of(d):
        for f in c.cells[t].boundary:
            out[f].append(t)
    return out


def _check_region_complete(c: CellComplex, d: int) -> None:
    if d < 2:
        raise DischargeError("d must be at least 2")
    if not c.regions:
        raise DischargeError("missing region cells")
    if c.dim != d:
        raise DischargeError(f"complex has dimension {c.dim}, expected {d}")


def preflight(c: CellComplex, d: int) -> None:
    """Both double-counting identities behind the weight sum, cell by cell:
    each (d-1)-cell lies in exactly two d-cells and has exactly d faces of
    dimension d-2."""
    _check_region_complete(c, d)
    tops = _top_incidences(c, d)
    lhs = sum(len(c.cells[t].boundary) for t in c.cells_of(d))
    if lhs != 2 * len(tops) or any(len(ts) != 2 for ts in tops.values()):
        bad = next(f for f, ts in tops.items() if len(ts) != 2)
        raise DischargeError(
            f"facet count identity fails: cell {bad} lies in {len(tops[bad])} d-cells, not 2"
        )
    ridges = c.cells_of(d - 2)
    lhs = sum(sum(1 for up in c.cofaces[r] if c.cells[up].dim == d - 1) for r in ridges)
    if lhs != d * len(tops) or any(len(c.cells[f].boundary) != d for f in tops):
        bad = next(f for f in tops if len(c.cells[f].boundary) != d)
        raise DischargeError(
            f"ridge count identity fails: cell {bad} has {len(c.cells[bad].boundary)} faces, not {d}"
        )


# ------------------------------------------------------------- weights

def initial_weights(c: CellComplex, a: int, b: int, d: int) -> WeightLedger:
    """Weights a*(#facets) - c on d-cells, 0 on (d-1)-cells,
    b*(#incident (d-1)-cells) - c on (d-2)-cells and a parity-signed c below."""
    preflight(c, d)
    p = DischargeParams(a, b, d)
    cc = p.c
    weights: dict[int, Fraction] = {}
    dims = {}
    for cid, cell in enumerate(c.cells):
        i = cell.dim
        dims[cid] = i
        if i == d:
            w = a * len(cell.boundary) - cc
        elif i == d - 1:
            w = 0
        elif i == d - 2:
            w = b * sum(1 for up in c.cofaces[cid] if c.cells[up].dim == d - 1) - cc
        else:
            w = p.low_sign(i) * cc
        weights[cid] = Fraction(w)
    return WeightLedger("initial", weights, p, dims)


def _pool(weights: dict[int, Fraction], ids: list[int]) -> None:
    if not ids:
        return
    share = sum((weights[x] for x in ids), Fraction(0)) / len(ids)
    for x in ids:
        weights[x] = share


def apply_R1(ledger: WeightLedger, c: CellComplex, scope: str = "joint") -> WeightLedger:
    """Pool the weights of all cells of dimension <= d-3 and share them out
    equally; ``per-dim`` pools each dimension on its own."""
    if ledger.stage != "initial":
        raise DischargeError(f"wrong stage: expected initial, got {ledger.stage}")
    if scope not in R1_SCOPES:
        raise DischargeError(f"r1 scope must be one of {R1_SCOPES}")
    d = ledger.params.d
    weights = dict(ledger.weights)
    if scope == "joint":
        _pool(weights, [x for x in weights if ledger.dims[x] <= d - 3])
    else:
        for i in range(d - 2):
            _pool(weights, [x for x in weights if ledger.dims[x] == i])
    return WeightLedger("after_R1", weights, ledger.params, ledger.dims, scope)


def apply_R2(ledger: WeightLedger, c: CellComplex) -> WeightLedger:
    """Pool every cell of dimension <= d-2 into one equal share."""
    if ledger.stage != "after_R1":
        raise DischargeError(f"wrong stage: expected after_R1, got {ledger.stage}")
    d = ledger.params.d
    weights = dict(ledger.weights)
    _pool(weights, [x for x in weights if ledger.dims[x] <= d - 2])
    return WeightLedger("after_R2", weights, ledger.params, ledger.dims, ledger.r1_scope)


@dataclass(frozen=True)
class ContradictionReport:
    stage: str
    all_nonnegative: bool
    some_positive: bool
    total: Fraction
    expected_total: int
    codim_one_weights: tuple[Fraction, Fraction]  # (min, max) over (d-1)-cells, shown apart
    negative_cells: tuple[int, ...]

    @property
    def contradiction(self) -> bool:
        """Every cell non-negative, one positive, yet the total must be <= 0."""
        return self.all_nonnegative and self.some_positive and self.expected_total <= 0

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "all_nonnegative": self.all_nonnegative,
            "some_positive": self.some_positive,
            "total": _frac(self.total),
            "expected_total": str(self.expected_total),
            "codim_one_weights": [_frac(x) for x in self.codim_one_weights],
            "negative_cells": list(self.negative_cells),
            "contradiction": self.contradiction,
        }


def contradiction_state(ledger: WeightLedger) -> ContradictionReport:
    ws = ledger.weights
    d = ledger.params.d
    codim = [w for x, w in ws.items() if ledger.dims[x] == d - 1] or [Fraction(0)]
    neg = tuple(sorted(x for x, w in ws.items() if w < 0))
    return ContradictionReport(
        ledger.stage,
        not neg,
        any(w > 0 for w in ws.values()),
        ledger.total,
        ledger.params.expected_total,
        (min(codim), max(codim)),
        neg[:20],
    )


def run_discharge(c: CellComplex, a: int, b: int, d: int, r1_scope: str = "joint") -> dict:
    """All three stages with the conservation verdict."""
    w0 = initial_weights(c, a, b, d)
    w1 = apply_R1(w0, c, r1_scope)
    w2 = apply_R2(w1, c)
    totals = [w.total for w in (w0, w1, w2)]
    return {
        "params": w0.params.to_json(),
        "r1_scope": r1_scope,
        "face_vector": c.face_vector(),
        "total": _frac(totals[0]),
        "expected_total": str(w0.params.expected_total),
        "identity_holds": totals[0] == w0.params.expected_total,
        "conserved": totals[0] == totals[1] == totals[2],
        "stages": [w.to_json() for w in (w0, w1, w2)],
        "contradiction": contradiction_state(w1).to_json(),
    }


# ------------------------------------------------------------- cell coloring

@dataclass(frozen=True)
class CellColoring:
    dimension: int
    assignment: dict[int, int]  # i-cell id -> color, colors start at 1
    palette_size: int

    def is_valid(self, c: CellComplex) -> bool:
        return not _violations(c, self.dimension, self.assignment)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "colors": {str(x): k for x, k in sorted(self.assignment.items())},
            "k": self.palette_size,
        }


def _coloring_problem(c: CellComplex, i: int) -> tuple[list[int], list[tuple[int, ...]]]:
    cells = [x for x in c.cells_of(i) if not c.cells[x].region]
    groups = [
        tuple(sorted(c.cells[u].boundary))
        for u in c.cells_of(i + 1)
        if not c.cells[u].region
    ]
    return cells, groups


def _violations(c: CellComplex, i: int, assignment: dict[int, int]) -> list[int]:
    cells, _ = _coloring_problem(c, i)
    if set(assignment) != set(cells):
        return [-1]
    return [
        u for u in c.cells_of(i + 1)
        if not c.cells[u].region and len({assignment[f] for f in c.cells[u].boundary}) < 2
    ]


def i_dim_color(c: CellComplex, i: int, k: int) -> CellColoring | None:
    """A coloring of the i-cells with at most k colors in which every
    (i+1)-cell has two differently colored faces, or None if none exists.
    Region cells take no part."""
    if i < 0 or k < 0:
        raise DischargeError("i and k must be non-negative")
    cells, groups = _coloring_problem(c, i)
    if len(cells) > COLOR_MAX_CELLS:
        raise DischargeError(f"instance too large: {len(cells)} > {COLOR_MAX_CELLS} cells")
    if not cells:
        return CellColoring(i, {}, 0)
    if groups and k < 2:
        return None
    if k < 1:
        return None
    member: dict[int, list[int]] = {x: [] for x in cells}
    for gi, grp in enumerate(groups):
        for x in grp:
            member[x].append(gi)
    # most constrained cells first, then by id; each group is checked when
    # its last cell receives a color
    order = sorted(cells, key=lambda x: (-len(member[x]), x))
    pos = {x: j for j, x in enumerate(order)}
    closing: dict[int, list[int]] = {x: [] for x in cells}
    for gi, grp in enumerate(groups):
        closing[max(grp, key=pos.get)].append(gi)
    colors: dict[int, int] = {}

    def rec(j: int, used: int) -> bool:
        if j == len(order):
            return True
        x = order[j]
        for col in range(1, min(used + 1, k) + 1):
            colors[x] = col
            if all(len({colors[f] for f in groups[gi]}) >= 2 for gi in closing[x]):
                if rec(j + 1, max(used, col)):
                    return True
            del colors[x]
        return False

    if not rec(0, 0):
        return None
    return CellColoring(i, dict(sorted(colors.items())), len(set(colors.values())))


def chromatic_i(c: CellComplex, i: int) -> int:
    """Least k admitting an i-dimensional k-coloring."""
    return chromatic_i_witness(c, i).palette_size


def chromatic_i_witness(c: CellComplex, i: int) -> CellColoring:
    cells, groups = _coloring_problem(c, i)
    k = 1 if not groups else 2
    if not cells:
        return CellColoring(i, {}, 0)
    while True:
        col = i_dim_color(c, i, k)
        if col is not None:
            return col
        k += 1


def is_d_uniform(c: CellComplex, d: int) -> bool:
    """Every (d-1)-cell is a simplex: exactly d vertices."""
    return all(
        len(c.cells[x].vertices) == d for x in c.cells_of(d - 1) if not c.cells[x].region
    )


# ------------------------------------------------------------- dual graph

@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[int, ...]  # d-cell ids
    edges: tuple[tuple[int, int, int], ...]  # (facet id, d-cell, d-cell); parallel edges kept

    def components(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in self.vertices})

    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.vertices) + self.components()

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def dual_graph(c: CellComplex) -> DualGraph:
    d = c.dim
    tops = _top_incidences(c, d)
    for f, ts in tops.items():
        if len(ts) != 2:
            raise DischargeError(f"pendant facet: cell {f} lies in {len(ts)} d-cells")
    dg = DualGraph(tuple(c.cells_of(d)), tuple((f, ts[0], ts[1]) for f, ts in sorted(tops.items())))
    if dg.vertices and dg.components() != 1:
        raise DischargeError("dual graph is disconnected")
    return dg


def check_dual_cycle_inequality(c: CellComplex) -> dict:
    """|A_d| - |A_{d-1}| + |A_{d-2}| >= 1, together with the independent
    cycle count of the dual graph."""
    d = c.dim
    dg = dual_graph(c)
    fv = c.face_vector()
    value = fv[d] - fv[d - 1] + fv[d - 2]
    predicted = fv[d - 1] - fv[d] + 1
    return {
        "d": d,
        "value": value,
        "holds": value >= 1,
        "dual_vertices": len(dg.vertices),
        "dual_edges": len(dg.edges),
        "dual_cycle_rank": dg.cycle_rank(),
        "predicted_cycle_rank": predicted,
        "cycle_rank_matches": dg.cycle_rank() == predicted,
    }


def scan_reducible_configurations(c: CellComplex, d: int) -> dict:
    """List the (d-2)-cells lying in at most d+2 cells of dimension d-1.

    Any such cell is a reducible configuration, so the complex cannot be a
    minimal counterexample to the (d+3)-coloring bound.
    """
    ridges = [x for x in c.cells_of(d - 2) if not c.cells[x].region] if d >= 2 else []
    degree = {
        x: sum(1 for up in c.cofaces[x] if c.cells[up].dim == d - 1 and not c.cells[up].region)
        for x in ridges
    }
    low = sorted(x for x, k in degree.items() if k <= d + 2)
    return {
        "d": d,
        "d_uniform": is_d_uniform(c, d),
        "scanned": len(ridges),
        "vacuous": not ridges,
        "threshold": d + 3,
        "reducible": low,
        "non_reducible": sorted(x for x in ridges if x not in set(low)),
        "degrees": {str(x): k for x, k in sorted(degree.items())},
    }

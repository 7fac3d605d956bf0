"""Command-line driver.

Results go to stdout as one canonical JSON document (sorted keys), so equal
inputs give byte-identical output.  The run manifest, which includes wall
time, goes to stderr and optionally to ``--manifest FILE``.

Exit codes: 0 positive result, 1 negative finding, 2 input error,
3 hypothesis violation, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from itertools import combinations
from typing import Callable

from . import __version__
from . import generators as gen
from .coloring import (
    average_degree,
    degeneracy,
    degeneracy_greedy,
    exact_chromatic,
    frac,
    skeleton_average_degree_audit,
    verify_chromatic_bound,
)
from .complex import CellComplex, ComplexError, is_closed
from .discharge import (
    R1_SCOPES,
    check_dual_cycle_inequality,
    chromatic_i_witness,
    dual_graph,
    i_dim_color,
    run_discharge,
    scan_reducible_configurations,
)
from .forge import MODES, build_bipartite_witness, build_complete_witness, raise_dimension, regions
from .graph import (
    Graph,
    GraphError,
    HypothesisViolation,
    bfs_layers,
    contract_edge,
    find_contractible_edge,
    load_graph,
    vertex_connectivity,
)
from .minors import (
    MinorModel,
    has_clique_minor,
    has_complete_bipartite_minor,
    has_minor,
    minor_free_sampler,
    verify_minor_model,
)
from .structure import (
    bridges_of_cycle,
    classify_bridge_pair,
    ear_decomposition,
    marked_s_decomposition,
    verify_ear_decomposition,
)
from .topology import DEFAULT_STEP_BUDGET, betti_numbers, certify_sphere, euler_characteristic, pi1_trivial

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_BUDGET = 0, 1, 2, 3, 4
THREADS_ENV = "GRAPHGEOM_THREADS"


class BudgetExhausted(Exception):
    def __init__(self, payload: dict):
        super().__init__("budget exhausted")
        self.payload = payload


class Outcome:
    """Result payload plus exit code."""

    def __init__(self, payload, code: int = EXIT_OK, lines: bool = False):
        self.payload = payload
        self.code = code
        self.lines = lines  # emit a list payload as JSON lines


# ------------------------------------------------------------------ inputs

_inputs: dict[str, str] = {}


def _digest(path: str) -> None:
    with open(path, "rb") as fh:
        _inputs[path] = hashlib.sha256(fh.read()).hexdigest()


def _graph(path: str) -> Graph:
    _digest(path)
    return load_graph(path)


def _complex(path: str) -> CellComplex:
    _digest(path)
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None
    return CellComplex.from_json(data)


def _json_file(path: str):
    _digest(path)
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _found(model: MinorModel | None) -> Outcome:
    if model is None:
        return Outcome({"found": False}, EXIT_NEGATIVE)
    return Outcome({"found": True, "model": model.to_json()})


# ------------------------------------------------------------------ graph

def cmd_graph(args) -> Outcome:
    g = _graph(args.file)
    sub = args.sub
    if sub == "connectivity":
        return Outcome({"kappa": vertex_connectivity(g)})
    if sub == "contract":
        return Outcome(contract_edge(g, tuple(args.edge)).to_json())
    if sub == "contractible":
        e = find_contractible_edge(g, args.k)
        return Outcome({"edge": list(e) if e else None}, EXIT_OK if e else EXIT_NEGATIVE)
    if sub == "bridges":
        bs = bridges_of_cycle(g, args.cycle)
        pairs = [
            {"pair": [i, j], "relation": classify_bridge_pair(bs[i], bs[j], args.cycle)}
            for i, j in combinations(range(len(bs)), 2)
        ]
        return Outcome({
            "bridges": [
                {
                    "attachments": sorted(b.attachments),
                    "internal_vertices": sorted(b.internal_vertices),
                    "edges": [list(e) for e in sorted(b.edges)],
                    "k": b.k,
                    "trivial": b.trivial,
                }
                for b in bs
            ],
            "pairs": pairs,
        })
    if sub == "ears":
        dec = ear_decomposition(g)
        ok, why = verify_ear_decomposition(g, dec)
        return Outcome({"cycle": list(dec.cycle), "ears": [list(e) for e in dec.ears], "valid": ok, "reason": why})
    if sub == "sdecomp":
        dec = marked_s_decomposition(g, args.cut)
        return Outcome({
            "cut": list(dec.cut),
            "components": [
                {"vertices": list(h.vertices), "edges": [list(e) for e in h.sorted_edges()]}
                for h in dec.components
            ],
            "marker_edges": [list(e) for e in sorted(dec.marker_edges)],
        })
    if sub == "layers":
        ls = bfs_layers(g, args.root)
        return Outcome({"sizes": [len(x) for x in ls], "layers": ls})
    raise AssertionError(sub)


# ------------------------------------------------------------------ minor

def cmd_minor(args) -> Outcome:
    sub = args.sub
    if sub == "sample":
        graphs = minor_free_sampler(args.n, args.d, args.seed, args.budget)
        return Outcome({"n": args.n, "d": args.d, "seed": args.seed, "graphs": [x.to_json() for x in graphs]})
    g = _graph(args.file)
    if sub == "has":
        return _found(has_minor(g, _graph(args.pattern)))
    if sub == "clique":
        return _found(has_clique_minor(g, args.t))
    if sub == "bipartite":
        return _found(has_complete_bipartite_minor(g, args.s, args.t))
    if sub == "verify":
        model = MinorModel.from_json(_json_file(args.model))
        ok, why = verify_minor_model(g, model)
        return Outcome({"valid": ok, "violation": why or None}, EXIT_OK if ok else EXIT_NEGATIVE)
    raise AssertionError(sub)


# ------------------------------------------------------------------ complex

def cmd_complex(args) -> Outcome:
    sub = args.sub
    if sub == "raise":
        res = raise_dimension(_graph(args.file), args.x, args.mode, args.strict)
        if args.fills:
            with open(args.fills, "w") as fh:
                for rec in res.fills:
                    fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
        return Outcome({
            "face_vector": res.complex.face_vector(),
            "stop_reason": res.stop_reason,
            "fills_per_level": res.levels,
            "meta": res.complex.meta,
            "complex": res.complex.to_json(),
        })
    if sub == "witness":
        cx = build_complete_witness(args.d) if args.kind == "complete" else build_bipartite_witness(args.d)
        return Outcome({"face_vector": cx.face_vector(), "betti": betti_numbers(cx), "complex": cx.to_json()})
    cx = _complex(args.file)
    if sub == "faces":
        rep = is_closed(cx, args.ambient)
        return Outcome({
            "face_vector": cx.face_vector(),
            "euler": euler_characteristic(cx),
            "closed": rep.closed,
            "pendant": list(rep.pendant),
            "simplicity_violations": cx.simplicity_violations(),
        })
    if sub == "regions":
        witness = _json_file(args.witness) if args.witness else None
        return Outcome(regions(cx, witness).to_json())
    raise AssertionError(sub)


# ------------------------------------------------------------------ certify

def cmd_certify(args) -> Outcome:
    cx = _complex(args.file)
    sub = args.sub
    if sub == "betti":
        return Outcome({"rational": betti_numbers(cx, "rational"), "GF2": betti_numbers(cx, "GF2"),
                        "euler": euler_characteristic(cx)})
    if sub == "pi1":
        rep = pi1_trivial(cx, args.budget)
        payload = {
            "verdict": rep.verdict,
            "generators": rep.generators,
            "relators": rep.relators,
            "remaining_generators": rep.remaining_generators,
            "remaining_relators": rep.remaining_relators,
            "steps": rep.steps,
            "h1_trivial": rep.h1_trivial,
        }
        if rep.budget_exhausted:
            payload["note"] = f"step budget {args.budget} exhausted; rerun with a larger --budget"
            raise BudgetExhausted(payload)
        return Outcome(payload, EXIT_OK if rep.verdict == "yes" else EXIT_NEGATIVE)
    if sub == "sphere":
        ids = cx.induced(args.vertices, max_dim=args.i) if args.vertices else set(args.cells)
        cert = certify_sphere(cx, ids, args.i, ambient_checks=not args.no_ambient, step_budget=args.budget)
        code = {"certified": EXIT_OK, "refuted": EXIT_NEGATIVE}.get(cert.verdict, EXIT_BUDGET)
        payload = cert.to_json()
        if code == EXIT_BUDGET:
            payload["note"] = f"inconclusive within step budget {args.budget}; rerun with a larger --budget"
            raise BudgetExhausted(payload)
        return Outcome(payload, code)
    if sub == "spheres":
        # one certificate per vertex subset whose induced subcomplex reaches dimension i
        lines = []
        verts = sorted(cx.vertex_id)
        for vs in combinations(verts, args.size):
            ids = cx.induced(vs, max_dim=args.i)
            if not any(cx.cells[x].dim == args.i for x in ids):
                continue
            cert = certify_sphere(cx, ids, args.i, ambient_checks=not args.no_ambient, step_budget=args.budget)
            lines.append({"vertices": list(vs), **cert.to_json()})
        ok = all(x["verdict"] == "certified" for x in lines)
        return Outcome(lines, EXIT_OK if ok else EXIT_NEGATIVE, lines=True)
    raise AssertionError(sub)


# ------------------------------------------------------------------ color

def cmd_color(args) -> Outcome:
    sub = args.sub
    if sub == "audit":
        return Outcome(skeleton_average_degree_audit(_complex(args.file), args.d))
    g = _graph(args.file)
    if sub == "greedy":
        col = degeneracy_greedy(g)
        return Outcome({**col.to_json(), "degeneracy": degeneracy(g)})
    if sub == "exact":
        k, col = exact_chromatic(g)
        return Outcome({**col.to_json(), "chi": k})
    if sub == "average":
        return Outcome({"average_degree": frac(average_degree(g)), "n": g.n, "m": g.m})
    if sub == "bound":
        rep = verify_chromatic_bound(g, args.d)
        if not rep.applicable:
            return Outcome(rep.to_json(), EXIT_HYPOTHESIS)
        return Outcome(rep.to_json(), EXIT_OK if rep.holds else EXIT_NEGATIVE)
    raise AssertionError(sub)


# ------------------------------------------------------------------ discharge

def cmd_discharge(args) -> Outcome:
    cx = _complex(args.file)
    sub = args.sub
    if sub == "run":
        rep = run_discharge(cx, args.a, args.b, args.d, args.r1_scope)
        return Outcome(rep, EXIT_OK if rep["conserved"] else EXIT_NEGATIVE)
    if sub == "color":
        col = i_dim_color(cx, args.i, args.k)
        if col is None:
            return Outcome({"found": False}, EXIT_NEGATIVE)
        return Outcome({"found": True, "coloring": col.to_json()})
    if sub == "chi":
        col = chromatic_i_witness(cx, args.i)
        return Outcome({"i": args.i, "chi": col.palette_size, "coloring": col.to_json()})
    if sub == "dual":
        dg = dual_graph(cx)
        return Outcome({**dg.to_json(), "cycle_rank": dg.cycle_rank()})
    if sub == "inequality":
        rep = check_dual_cycle_inequality(cx)
        return Outcome(rep, EXIT_OK if rep["holds"] and rep["cycle_rank_matches"] else EXIT_NEGATIVE)
    if sub == "reducible":
        rep = scan_reducible_configurations(cx, args.d)
        return Outcome(rep, EXIT_OK if rep["reducible"] else EXIT_NEGATIVE)
    raise AssertionError(sub)


# ------------------------------------------------------------------ make

NAMED_GRAPHS: dict[str, Callable[[], Graph]] = {
    "petersen": gen.petersen,
    "octahedron": gen.octahedron,
    "ear-example": gen.ear_example_graph,
}
NAMED_COMPLEXES: dict[str, Callable[[], CellComplex]] = {
    "tetra_regions": gen.tetra_regions,
    "octahedron_planar": gen.octahedron_planar,
    "octahedron_surface": gen.octahedron_surface,
    "octahedron_regions": gen.octahedron_regions,
    "simplex4_regions": gen.simplex4_regions,
    "simplex4_skeleton_regions": gen.simplex4_skeleton_regions,
    "torus7": gen.torus7,
    "tetra": lambda: gen.simplex_boundary(3),
}


def _named_graph(name: str) -> Graph:
    if name in NAMED_GRAPHS:
        return NAMED_GRAPHS[name]()
    kind, _, rest = name.partition(":")
    try:
        nums = [int(x) for x in rest.split(",")] if rest else []
        if kind == "complete":
            return gen.complete(*nums)
        if kind == "bipartite":
            return gen.complete_bipartite(*nums)
        if kind == "cycle":
            return gen.cycle(*nums)
        if kind == "path":
            return gen.path(*nums)
    except TypeError:
        pass
    raise GraphError(f"unknown graph name {name!r}")


def cmd_make(args) -> Outcome:
    if args.sub == "graph":
        return Outcome(_named_graph(args.name).to_json())
    if args.sub == "triangulation":
        return Outcome(gen.stacked_planar_triangulation(args.n, args.seed)[0].to_json())
    if args.sub == "stacked-s3":
        return Outcome(gen.stacked_s3_regions(args.subdivisions, args.seed).to_json())
    if args.name not in NAMED_COMPLEXES:
        raise ComplexError(f"unknown complex name {args.name!r}")
    return Outcome(NAMED_COMPLEXES[args.name]().to_json())


# ------------------------------------------------------------------ parser

def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or 1)")
    common.add_argument("--manifest", help="also write the run manifest to this file")

    p = argparse.ArgumentParser(prog="graphgeom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    top = p.add_subparsers(dest="cmd", required=True)

    def leaf(group, name, **kw):
        return group.add_parser(name, parents=[common], **kw)

    # graph
    gp = top.add_parser("graph").add_subparsers(dest="sub", required=True)
    for name in ("connectivity", "ears"):
        leaf(gp, name).add_argument("file")
    x = leaf(gp, "contract")
    x.add_argument("file")
    x.add_argument("--edge", type=int, nargs=2, required=True)
    x = leaf(gp, "contractible")
    x.add_argument("file")
    x.add_argument("--k", type=int, required=True)
    x = leaf(gp, "bridges")
    x.add_argument("file")
    x.add_argument("--cycle", type=int, nargs="+", required=True)
    x = leaf(gp, "sdecomp")
    x.add_argument("file")
    x.add_argument("--cut", type=int, nargs="+", required=True)
    x = leaf(gp, "layers")
    x.add_argument("file")
    x.add_argument("--root", type=int, default=0)

    # minor
    mp = top.add_parser("minor").add_subparsers(dest="sub", required=True)
    x = leaf(mp, "has")
    x.add_argument("file")
    x.add_argument("--pattern", required=True)
    x = leaf(mp, "clique")
    x.add_argument("file")
    x.add_argument("--t", type=int, required=True)
    x = leaf(mp, "bipartite")
    x.add_argument("file")
    x.add_argument("--s", type=int, default=3)
    x.add_argument("--t", type=int, required=True)
    x = leaf(mp, "verify")
    x.add_argument("file")
    x.add_argument("model")
    x = leaf(mp, "sample")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--d", type=int, required=True)
    x.add_argument("--budget", type=int, default=10)

    # complex
    cp = top.add_parser("complex").add_subparsers(dest="sub", required=True)
    x = leaf(cp, "raise")
    x.add_argument("file")
    x.add_argument("--x", type=int, required=True)
    x.add_argument("--mode", choices=MODES, default="triangulated")
    x.add_argument("--strict", action="store_true", help="require connectivity >= 4 and x <= connectivity - 2")
    x.add_argument("--fills", help="write the fill log here as JSON lines")
    x = leaf(cp, "witness")
    x.add_argument("--kind", choices=("complete", "bipartite"), required=True)
    x.add_argument("--d", type=int, required=True)
    x = leaf(cp, "faces")
    x.add_argument("file")
    x.add_argument("--ambient", type=int, default=None)
    x = leaf(cp, "regions")
    x.add_argument("file")
    x.add_argument("--witness", help="JSON list of top-cell id lists, one per region")

    # certify
    tp = top.add_parser("certify").add_subparsers(dest="sub", required=True)
    leaf(tp, "betti").add_argument("file")
    x = leaf(tp, "pi1")
    x.add_argument("file")
    x.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET)
    for name in ("sphere", "spheres"):
        x = leaf(tp, name)
        x.add_argument("file")
        x.add_argument("--i", type=int, required=True)
        x.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET)
        x.add_argument("--no-ambient", action="store_true", help="skip the induced and complement checks")
        if name == "sphere":
            sel = x.add_mutually_exclusive_group(required=True)
            sel.add_argument("--cells", type=int, nargs="+")
            sel.add_argument("--vertices", type=int, nargs="+")
        else:
            x.add_argument("--size", type=int, required=True)

    # color
    kp = top.add_parser("color").add_subparsers(dest="sub", required=True)
    for name in ("greedy", "exact", "average"):
        leaf(kp, name).add_argument("file")
    x = leaf(kp, "bound")
    x.add_argument("file")
    x.add_argument("--d", type=int, required=True)
    x = leaf(kp, "audit")
    x.add_argument("file")
    x.add_argument("--d", type=int, required=True)

    # discharge
    dp = top.add_parser("discharge").add_subparsers(dest="sub", required=True)
    x = leaf(dp, "run")
    x.add_argument("file")
    x.add_argument("--a", type=int, required=True)
    x.add_argument("--b", type=int, required=True)
    x.add_argument("--d", type=int, required=True)
    x.add_argument("--r1-scope", choices=R1_SCOPES, default="joint")
    x = leaf(dp, "color")
    x.add_argument("file")
    x.add_argument("--i", type=int, required=True)
    x.add_argument("--k", type=int, required=True)
    x = leaf(dp, "chi")
    x.add_argument("file")
    x.add_argument("--i", type=int, required=True)
    for name in ("dual", "inequality"):
        leaf(dp, name).add_argument("file")
    x = leaf(dp, "reducible")
    x.add_argument("file")
    x.add_argument("--d", type=int, required=True)

    # make: named inputs
    kp = top.add_parser("make").add_subparsers(dest="sub", required=True)
    leaf(kp, "graph").add_argument("name", help="petersen, octahedron, ear-example, complete:N, "
                                                "bipartite:S,T, cycle:N or path:N")
    leaf(kp, "complex").add_argument("name", choices=sorted(NAMED_COMPLEXES))
    leaf(kp, "triangulation").add_argument("--n", type=int, required=True)
    leaf(kp, "stacked-s3").add_argument("--subdivisions", type=int, required=True)
    return p


HANDLERS = {
    "graph": (cmd_graph, "graph-core"),
    "minor": (cmd_minor, "minor-lab"),
    "complex": (cmd_complex, "complex-forge"),
    "certify": (cmd_certify, "topo-certify"),
    "color": (cmd_color, "chroma"),
    "discharge": (cmd_discharge, "discharge"),
    "make": (cmd_make, "cli"),
}


def _emit(payload, lines: bool = False) -> None:
    items = payload if lines else [payload]
    for item in items:
        sys.stdout.write(json.dumps(item, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = _default_threads()
    _inputs.clear()
    handler, module = HANDLERS[args.cmd]
    start = time.perf_counter()
    lines = False
    try:
        out = handler(args)
        code, payload, lines = out.code, out.payload, out.lines
    except BudgetExhausted as exc:
        code, payload = EXIT_BUDGET, {"budget_exhausted": True, **exc.payload}
    except HypothesisViolation as exc:
        code, payload = EXIT_HYPOTHESIS, {"error": {"module": module, "kind": "hypothesis", "message": str(exc)}}
    except (GraphError, ComplexError, OSError) as exc:
        code, payload = EXIT_INPUT, {"error": {"module": module, "kind": "input", "message": str(exc)}}
    _emit(payload, lines)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("manifest",)}
    manifest = {
        "command": " ".join([args.cmd, getattr(args, "sub", "")]).strip(),
        "inputs": dict(sorted(_inputs.items())),
        "seed": args.seed,
        "threads": args.threads,
        "parameters": params,
        "version": __version__,
        "exit_code": code,
        "wall_time_s": round(time.perf_counter() - start, 6),
    }
    if isinstance(payload, dict) and "error" in payload:
        print(f"graphgeom: {payload['error']['module']}: {payload['error']['message']}", file=sys.stderr)
    print("manifest: " + json.dumps(manifest, sort_keys=True), file=sys.stderr)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

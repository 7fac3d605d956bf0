"""Discharging ledgers over the closed corpus: face vectors, Euler
characteristic, the weight-sum identity and the after-R1 sign state."""

import argparse

from graphgeom import generators as gen
from graphgeom.discharge import check_dual_cycle_inequality, run_discharge
from graphgeom.topology import euler_characteristic


def rows(a: int | None, b: int | None, scope: str):
    for name, c, d in gen.closed_corpus():
        aa = d if a is None else a
        bb = d - 1 if b is None else b
        rep = run_discharge(c, aa, bb, d, scope)
        ineq = check_dual_cycle_inequality(c)
        yield (
            name, d, c.face_vector(), euler_characteristic(c), aa, bb, rep["total"],
            rep["expected_total"], rep["conserved"], rep["contradiction"]["all_nonnegative"], ineq["value"],
        )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=None, help="default: d")
    ap.add_argument("--b", type=int, default=None, help="default: d - 1")
    ap.add_argument("--r1-scope", choices=("joint", "per-dim"), default="joint")
    args = ap.parse_args()
    head = ("complex", "d", "faces", "euler", "a", "b", "total", "expected", "conserved", "R1>=0", "dual-ineq")
    print(" | ".join(head))
    for r in rows(args.a, args.b, args.r1_scope):
        print(" | ".join(str(x) for x in r))


if __name__ == "__main__":
    main()

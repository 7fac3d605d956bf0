"""Face vectors, Betti numbers and closedness of the two witness families
U^(d-1)(K_(d+3)) and U^(d-1)(K_(3,d+1))."""

import argparse
import json

from graphgeom.complex import is_closed
from graphgeom.forge import build_bipartite_witness, build_complete_witness
from graphgeom.topology import betti_numbers


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ds", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()
    for d in args.ds:
        for kind, build in (("complete", build_complete_witness), ("bipartite", build_bipartite_witness)):
            c = build(d)
            print(json.dumps({
                "d": d,
                "kind": kind,
                "face_vector": c.face_vector(),
                "betti_rational": betti_numbers(c, "rational"),
                "betti_gf2": betti_numbers(c, "GF2"),
                "closed": is_closed(c).closed,
                "stop_reason": c.meta.get("stop_reason"),
            }, sort_keys=True))


if __name__ == "__main__":
    main()

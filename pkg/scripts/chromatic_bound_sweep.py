"""Sample minor-free graphs and tabulate exact chromatic numbers against d(d+1).

Also measures the conjectured d+2 value per (n, d) cell; nothing is asserted
about it.  Output is one JSON object per (n, d) cell.
"""

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from graphgeom.coloring import exact_chromatic
from graphgeom.minors import minor_free_sampler


@dataclass
class SweepConfig:
    ns: tuple[int, ...] = (6, 8, 10, 12)
    ds: tuple[int, ...] = (2, 3)
    per_cell: int = 25
    seed: int = 0


def sweep(cfg: SweepConfig):
    for d in cfg.ds:
        for n in cfg.ns:
            graphs = minor_free_sampler(n, d, seed=cfg.seed + 1000 * d + n, budget=cfg.per_cell)
            chis = Counter(exact_chromatic(g)[0] for g in graphs)
            yield {
                "n": n,
                "d": d,
                "samples": len(graphs),
                "bound": d * (d + 1),
                "chi_histogram": {str(k): v for k, v in sorted(chis.items())},
                "violations": sum(v for k, v in chis.items() if k > d * (d + 1)),
                "above_d_plus_2": sum(v for k, v in chis.items() if k > d + 2),
            }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=list(SweepConfig.ns))
    ap.add_argument("--ds", type=int, nargs="+", default=list(SweepConfig.ds))
    ap.add_argument("--per-cell", type=int, default=SweepConfig.per_cell)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = SweepConfig(tuple(a.ns), tuple(a.ds), a.per_cell, a.seed)
    print(json.dumps({"config": asdict(cfg)}))
    for row in sweep(cfg):
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()

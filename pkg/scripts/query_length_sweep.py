"""Sweep random bounded-mw graphs and report the longest query against the layout bound.

    python3 scripts/query_length_sweep.py --ns 50 100 200 --ks 4 5 6 --seeds 3
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from mwtc.encoding import bound_bits, value_width
from mwtc.engine import solve
from mwtc.generators import GenSpec, random_bounded_mw
from mwtc.values import SYSTEMS


@dataclass(frozen=True)
class SweepConfig:
    ns: tuple[int, ...] = (50, 100, 200)
    ks: tuple[int, ...] = (4, 5, 6)
    seeds: int = 3


def sweep(cfg: SweepConfig):
    for n in cfg.ns:
        w = value_width(n)
        for k in cfg.ks:
            for seed in range(cfg.seeds):
                g = random_bounded_mw(GenSpec(n, k, seed))
                for sid, s in SYSTEMS.items():
                    _, tr = solve(g, sid)
                    yield {
                        "n": n, "k": k, "seed": seed, "system": sid, "mw": tr.mw,
                        "queries": tr.queries, "max_bits": tr.max_query_bits,
                        "bound": bound_bits(max(k, 2), s.r, w),
                    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=list(SweepConfig.ns))
    ap.add_argument("--ks", type=int, nargs="+", default=list(SweepConfig.ks))
    ap.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    args = ap.parse_args(argv)
    cfg = SweepConfig(tuple(args.ns), tuple(args.ks), args.seeds)

    start = time.time()
    out = csv.DictWriter(sys.stdout, ["n", "k", "seed", "system", "mw", "queries", "max_bits", "bound"])
    out.writeheader()
    over = 0
    for row in sweep(cfg):
        over += row["max_bits"] > row["bound"]
        out.writerow(row)
    print(f"# {over} rows over the bound, {time.time() - start:.1f}s", file=sys.stderr)
    return 1 if over else 0


if __name__ == "__main__":
    sys.exit(main())

"""Engine vs exhaustive search on the reproducible corpus, per problem."""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter

from mwtc.corpus import CorpusConfig, build_corpus
from mwtc.engine import solve_all_problems
from mwtc.values import PROBLEMS, brute_answer


def main(argv=None) -> int:
    d = CorpusConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=d.count)
    ap.add_argument("--max-n", type=int, default=d.max_n)
    ap.add_argument("--seed", type=int, default=d.seed)
    args = ap.parse_args(argv)
    cfg = CorpusConfig(args.count, args.max_n, args.seed)

    start = time.time()
    graphs = build_corpus(cfg)
    bad: Counter = Counter()
    for cg in graphs:
        got = solve_all_problems(cg.g)
        for pid in PROBLEMS:
            if got[pid] != brute_answer(pid, cg.g):
                bad[pid] += 1
                print(f"MISMATCH {pid} {cg.label} engine={got[pid]} brute={brute_answer(pid, cg.g)}")
    for pid in PROBLEMS:
        print(f"{pid:32s} {len(graphs) - bad[pid]}/{len(graphs)}")
    print(f"kinds {dict(Counter(c.kind for c in graphs))}  {time.time() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

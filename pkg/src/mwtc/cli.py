"""Command-line front end: ``mwtc {solve,mdtree,gen,verify}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .brute import DEFAULT_CAP, CapExceeded
from .compose import MalformedQuery
from .encoding import EncodingError
from .engine import (
    FUNCTION,
    MEMBERSHIP,
    FunctionOracle,
    InternalConsistencyError,
    OracleContractError,
    solve_problem,
)
from .generators import DEFAULT_DEPTH_CAP, GenSpec, random_bounded_mw
from .graph import GraphInputError, format_edge_list, parse_edge_list
from .mdtree import decompose, format_tree, modular_width
from .values import EXISTS, PROBLEMS, brute_answer, decision, get_problem

EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH = 2, 3, 4


class _CorruptOracle(FunctionOracle):
    """Test hook: a function oracle that inflates the first value of every answer."""

    def __call__(self, data: bytes):
        ans = super().__call__(data)
        return (ans[0] + 1,) + ans[1:]


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(text)


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def cmd_solve(args) -> int:
    p = get_problem(args.problem)
    g = _read_graph(args.graph)
    answer, _, tr = solve_problem(p.id, g, mode=args.oracle_mode)
    if args.transcript:
        Path(args.transcript).write_text(tr.dump())
    if p.sense == EXISTS:
        print(_fmt(answer))
    else:
        print(f"value {_fmt(answer)}")
        if args.k is not None:
            print(_fmt(decision(p, answer, args.k)))
    return 0


def cmd_mdtree(args) -> int:
    tree = decompose(_read_graph(args.graph))
    sys.stdout.write(format_tree(tree))
    print(f"mw={modular_width(tree)}")
    return 0


def cmd_gen(args) -> int:
    spec = GenSpec(args.n, args.k, args.seed, args.depth_cap)
    g = random_bounded_mw(spec)
    sys.stdout.write(format_edge_list(g, header=f"# gen n={spec.n} k={spec.k} seed={spec.seed}"))
    return 0


def cmd_verify(args) -> int:
    p = get_problem(args.problem)
    g = _read_graph(args.graph)
    if g.n > DEFAULT_CAP:
        raise CapExceeded(f"n={g.n} exceeds the brute-force cap {DEFAULT_CAP}")
    kwargs = {"oracle": _CorruptOracle(p.system)} if args.corrupt_oracle else {}
    got, _, _ = solve_problem(p.id, g, **kwargs)
    want = brute_answer(p.id, g)
    if got == want:
        print(f"MATCH value={_fmt(got)}")
        return 0
    print(f"MISMATCH engine={_fmt(got)} brute={_fmt(want)}")
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mwtc", description="Exact graph problems solved over the modular decomposition.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="solve a problem on an edge-list graph")
    s.add_argument("problem", choices=sorted(PROBLEMS), metavar="PROBLEM")
    s.add_argument("graph", help="edge-list file, or - for stdin")
    s.add_argument("--oracle-mode", choices=[FUNCTION, MEMBERSHIP], default=FUNCTION)
    s.add_argument("--transcript", help="write the query transcript here")
    s.add_argument("--k", type=int, help="also answer the decision version with this threshold")
    s.set_defaults(func=cmd_solve)

    m = sub.add_parser("mdtree", help="print the modular decomposition tree")
    m.add_argument("graph")
    m.set_defaults(func=cmd_mdtree)

    gen = sub.add_parser("gen", help="generate a random graph of bounded modular-width")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=0, help="modular-width bound (0 for a cograph)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    gen.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="compare the engine against exhaustive search")
    v.add_argument("problem", choices=sorted(PROBLEMS), metavar="PROBLEM")
    v.add_argument("graph")
    v.add_argument("--corrupt-oracle", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InternalConsistencyError, OracleContractError, MalformedQuery) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GraphInputError, CapExceeded, EncodingError, KeyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

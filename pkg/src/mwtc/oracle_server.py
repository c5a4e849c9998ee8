"""Line-oriented oracle process: one hex query in, one answer out.

    python3 -m mwtc.oracle_server --system S-COL --mode function

Function mode answers ``v1,v2,...``; membership mode answers ``1`` or ``0``.
A query that cannot be answered yields ``error <message>``.
"""

from __future__ import annotations

import argparse
import subprocess
import sys

from .engine import FUNCTION, MEMBERSHIP, format_answer, make_oracle
from .values import SYSTEMS


def serve(system: str, mode: str, stdin=sys.stdin, stdout=sys.stdout) -> None:
    oracle = make_oracle(system, mode)
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            out = format_answer(oracle(bytes.fromhex(line)))
        except Exception as exc:  # report and keep serving
            out = f"error {type(exc).__name__}: {exc}"
        stdout.write(out + "\n")
        stdout.flush()


def ask_subprocess(system: str, mode: str, hex_queries: list[str], timeout: float = 600) -> list[str]:
    """Run a fresh oracle process over ``hex_queries`` and return its answer lines."""
    proc = subprocess.run(
        [sys.executable, "-m", "mwtc.oracle_server", "--system", system, "--mode", mode],
        input="".join(q + "\n" for q in hex_queries),
        capture_output=True,
        text=True,
        timeout=timeout,
        check=True,
    )
    return proc.stdout.splitlines()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="mwtc-oracle", description=__doc__.splitlines()[0])
    ap.add_argument("--system", required=True, choices=sorted(SYSTEMS))
    ap.add_argument("--mode", default=FUNCTION, choices=[FUNCTION, MEMBERSHIP])
    args = ap.parse_args(argv)
    serve(args.system, args.mode)
    return 0


if __name__ == "__main__":
    sys.exit(main())

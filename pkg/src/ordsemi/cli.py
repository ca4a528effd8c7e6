"""Command-line front end: ``eval``, ``check``, ``fuzz`` and ``explain``.

Exit status is 0 on success, 1 when a law check or fuzz run finds a
violation, and 2 for unusable input (nothing is printed to stdout then).
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import List, Optional

from .engine import evaluate
from .errors import OrdsemiError
from .lawcheck import BIASES, GenConfig, fuzz
from .semigroup import Semigroup, check_laws, get_builtin, load_table_file
from .seq import map_letters, parse_tree


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordsemi", description="Transfinite products over semigroups with omega-power.")
    sub = p.add_subparsers(dest="command", required=True)

    def semigroup_opt(sp, required=True):
        sp.add_argument("-s", "--semigroup", required=required,
                        help="ordinal-sum, strings:<alphabet>, left-projection, min-chain:<n>, "
                             "sat-counter, table:PATH, or omega:<selector>")

    ev = sub.add_parser("eval", help="evaluate the product of a sequence expression")
    semigroup_opt(ev)
    ev.add_argument("-e", "--expr", required=True, help='tree expression, e.g. "(one)^w one"')
    ev.add_argument("--trace", action="store_true", help="also print the evaluation trace")

    ex = sub.add_parser("explain", help="print the evaluation trace of an expression")
    semigroup_opt(ex)
    ex.add_argument("-e", "--expr", required=True)

    ck = sub.add_parser("check", help="brute-force check laws L1-L4 on a finite table")
    ck.add_argument("-t", "--table", help="table file")
    semigroup_opt(ck, required=False)
    ck.add_argument("--kmax", type=int, default=4)

    fz = sub.add_parser("fuzz", help="fuzz the product laws on generated sequences")
    semigroup_opt(fz, required=False)
    fz.add_argument("-t", "--table", help="table file (law check is not run first)")
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--cases", type=int, default=1000)
    fz.add_argument("--depth", type=int, default=4)
    fz.add_argument("--bias", choices=BIASES, default="uniform")
    fz.add_argument("--format", choices=("text", "lines"), default="text")
    return p


def _select(args) -> Semigroup:
    table = getattr(args, "table", None)
    if table and args.semigroup:
        raise ValueError("give either --table or --semigroup, not both")
    if table:
        return load_table_file(table)
    if not args.semigroup:
        raise ValueError("a semigroup (-s) or table (-t) is required")
    return get_builtin(args.semigroup)


def _tree(S, text):
    return map_letters(parse_tree(text), S.element)


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        # argparse prints usage errors and --help itself; route them to our streams
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        S = _select(args)
        if args.command in ("eval", "explain"):
            t = _tree(S, args.expr)
            value, trace = evaluate(t, S, trace=True)
            lines = []
            if args.command == "explain" or args.trace:
                lines.append(trace.render(S))
            if args.command == "eval":
                lines.append(S.render(value))
            out.write("\n".join(lines) + "\n")
            return 0
        if args.command == "check":
            report = check_laws(S, k_max=args.kmax)
            out.write(report.render() + "\n")
            return 0 if report.passed else 1
        if args.cases < 1:
            raise ValueError("--cases must be at least 1")
        cfg = GenConfig(seed=args.seed, max_depth=args.depth, case_bias=args.bias)
        report = fuzz(S, cfg, args.cases)
        out.write((report.render_lines() if args.format == "lines" else report.render()) + "\n")
        return 0 if report.passed else 1
    except (OrdsemiError, ValueError, KeyError, OSError) as exc:
        err.write(f"ordsemi: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())

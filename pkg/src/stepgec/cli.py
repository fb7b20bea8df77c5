"""Command line entry point: ``stepgec <verb> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness
from .rk import DP853, RK4, RK7, tableau_csv
from .solver import SolverError

log = logging.getLogger("stepgec")


def _policy(args) -> harness.RhoPolicy:
    return args.eps_rho if args.eps_rho is not None else args.rho_policy


def _cmd_solve(args) -> int:
    interval = None
    if (args.x0 is None) != (args.xn is None):
        raise SystemExit("--x0 and --xn must be given together")
    if args.x0 is not None:
        interval = (args.x0, args.xn)
    spec = harness.RunSpec(args.problem, args.eps_g, _policy(args), args.eps_rb,
                           interval, args.trace, args.summary)
    try:
        res, row = harness.run_single(spec)
    except SolverError as exc:
        print(f"solver aborted: {exc}", file=sys.stderr)
        return harness.EXIT_ABORT
    print(harness.TABLE_HEADER)
    print(row.format())
    if res.reboots:
        print(f"reboots: {res.reboots} at " + ", ".join(f"{x:.6g}" for x in res.reboot_nodes))
    return harness.exit_code([row])


def _cmd_table(args) -> int:
    rows = harness.run_table(args.eps_g, args.rho_policy, args.eps_rb)
    print(f"eps_g={args.eps_g:g}  eps_rho policy={args.rho_policy}")
    print(harness.TABLE_HEADER)
    for r in rows:
        print(r.format())
    if args.out:
        harness.write_table(rows, args.out, eps_g=args.eps_g,
                            rho_policy=args.rho_policy, eps_rb=args.eps_rb)
    return harness.exit_code(rows)


def _cmd_curves(args) -> int:
    spec = harness.RunSpec(args.problem, args.eps_g, args.rho_policy, args.eps_rb)
    try:
        res, row = harness.run_single(spec)
    except SolverError as exc:
        print(f"solver aborted: {exc}", file=sys.stderr)
        return harness.EXIT_ABORT
    harness.emit_error_curves(res, args.out)
    print(f"wrote {res.N} nodes to {args.out}")
    return harness.exit_code([row])


def _cmd_reboot(args) -> int:
    try:
        res = harness.run_reboot_experiment(args.eps_rb, args.eps_g, args.rho_policy)
    except SolverError as exc:
        print(f"solver aborted: {exc}", file=sys.stderr)
        return harness.EXIT_ABORT
    doc = {
        "problem": 3, "interval": list(harness.REBOOT_INTERVAL),
        "eps_g": args.eps_g, "rho_policy": args.rho_policy, "eps_rb": args.eps_rb,
        "note": "eps_g and eps_rho for this study are chosen by the harness",
        **res.summary(),
    }
    print(f"eps_rb={args.eps_rb:g}: {res.reboots} reboots, N={res.N} Q={res.Q} "
          f"P={res.P} S={res.S} star={res.star}")
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    ok = res.max_rel_error is not None and res.max_rel_error <= args.eps_g
    return harness.EXIT_OK if ok else harness.EXIT_TOLERANCE


def _cmd_table9(args) -> int:
    rows = harness.run_table9()
    print("#      y0        mu1        g_mu  newton")
    for r in rows:
        print(f"{r.problem_id}  {r.y0:6g}  {r.mu1:9.4f}  {r.g_mu:10.2f}  {r.iterations}")
    if args.out:
        Path(args.out).write_text(json.dumps([vars(r) for r in rows], indent=2) + "\n")
    return harness.EXIT_OK


_TABLEAUS = {"dp853": DP853, "rk4": RK4, "rk7": RK7}


def _cmd_tableau(args) -> int:
    text = tableau_csv(_TABLEAUS[args.method])
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return harness.EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stepgec",
        description="Euler's method with stepwise global error control.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="verb", required=True)

    def rb_arg(p, default="off"):
        p.add_argument("--eps-rb", default=default,
                       help="reboot tolerance: a number, 'auto' (eps_g/1000) or 'off'"
                            f" (default {default})")

    def rho_arg(p):
        p.add_argument("--rho-policy", default="ratio100", choices=["ratio100", "ratio10"])

    p = sub.add_parser("solve", help="run one problem")
    p.add_argument("--problem", type=int, required=True, choices=range(1, 7))
    p.add_argument("--eps-g", type=float, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--eps-rho", type=float, help="explicit default local tolerance")
    grp.add_argument("--rho-policy", default="ratio100", choices=["ratio100", "ratio10"])
    rb_arg(p)
    p.add_argument("--x0", type=float)
    p.add_argument("--xn", type=float)
    p.add_argument("--trace", help="CSV trace path")
    p.add_argument("--summary", help="JSON summary path")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("table", help="run all six problems")
    p.add_argument("--eps-g", type=float, required=True)
    rho_arg(p)
    rb_arg(p)
    p.add_argument("--out", help="JSON output path")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("curves", help="per-node error data for plotting")
    p.add_argument("--problem", type=int, required=True, choices=range(1, 7))
    p.add_argument("--eps-g", type=float, required=True)
    rho_arg(p)
    rb_arg(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("reboot", help="problem #3 on [0, 50] with a reboot tolerance")
    p.add_argument("--eps-rb", type=float, required=True)
    p.add_argument("--eps-g", type=float, default=harness.REBOOT_EPS_G)
    rho_arg(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_reboot)

    p = sub.add_parser("table9", help="starting values mu_1 and g_mu")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_table9)

    p = sub.add_parser("tableau-dump", help="CSV dump of a Butcher tableau")
    p.add_argument("--method", default="dp853", choices=sorted(_TABLEAUS))
    p.add_argument("--out")
    p.set_defaults(func=_cmd_tableau)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``robust-ttest <subcommand> ...``.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import RobustTError
from .fileio import load_table, make_report, read_sample, save_table
from .inference import (
    DEFAULT_PROBS,
    MIN_REPORTED_REPS,
    Calibration,
    build_quantile_table,
    classical_one_sample_test,
    robust_one_sample_test,
)
from .sampling import RngSpec
from .verification import DEFAULT_PIVOT_PARAMS, robustness_study, verify_normality, verify_pivot


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _param_pair(text: str) -> tuple[float, float]:
    vals = _float_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected MU,SIGMA, got {text!r}")
    return vals[0], vals[1]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robust-ttest",
        description="One-sample location tests based on the median and MAD.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("test", help="test H0: location = mu0 on a data file")
    p.add_argument("--data", required=True, help="delimited text file")
    p.add_argument("--column", default=None,
                   help="header name or 0-based column index (default: first column)")
    p.add_argument("--mu0", type=float, required=True)
    p.add_argument("--alternative", choices=["two-sided", "greater", "less"],
                   default="two-sided")
    p.add_argument("--calibration", choices=["asymptotic", "mc"], default="asymptotic")
    p.add_argument("--table", help="quantile table from `calibrate` (needed with --calibration mc)")
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--classical", action="store_true",
                   help="also run the Student t test on the same data")
    p.add_argument("--json", action="store_true", help="print a JSON report")

    p = sub.add_parser("calibrate", help="simulate and save a pivot quantile table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--probs", type=_float_list, default=list(DEFAULT_PROBS))
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-pivot",
                       help="check that the pivot distribution is free of (mu, sigma)")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--params", type=_param_pair, action="append",
                   help="MU,SIGMA (repeatable; write --params=-2,0.5 for a negative MU)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-normality",
                       help="KS distance of the scaled statistic to N(0,1) per n")
    p.add_argument("--grid", type=_int_list, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict", action="store_true",
                   help="exit 1 unless KS decreases along the grid and ends below 0.02")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")

    p = sub.add_parser("robustness-study",
                       help="empirical size of robust vs classical tests under contamination")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--shift", type=float, required=True,
                   help="contaminating mean, in units of the clean sigma")
    p.add_argument("--contam-sigma", type=float, default=1.0)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--level", type=float, default=0.05)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return parser


def _fmt_result(r) -> list[str]:
    lines = [f"{r.method} one-sample test  (n={r.n}, mu0={r.mu0:g}, "
             f"alternative={r.alternative.value}, calibration={r.calibration.value})"]
    if r.method == "robust":
        lines.append(f"  T_m             = {r.statistic_raw:.10g}")
        lines.append(f"  scaled T_m      = {r.statistic_scaled:.10g}")
    else:
        lines.append(f"  t               = {r.statistic_raw:.10g}  (df={r.n - 1})")
    lines.append(f"  p-value         = {r.p_value:.6g}")
    if r.table_id:
        lines.append(f"  table           = {r.table_id}")
    if r.level is not None:
        verdict = "reject H0" if r.reject else "do not reject H0"
        lines.append(f"  at level {r.level:g}: {verdict}")
    return lines


def _cmd_test(args) -> tuple[int, dict, list[str]]:
    column = args.column
    sample = read_sample(args.data, column)
    calibration = Calibration.MONTE_CARLO if args.calibration == "mc" else Calibration.ASYMPTOTIC
    table = load_table(args.table) if args.table else None
    results = []
    robust = robust_one_sample_test(sample, args.mu0, args.alternative, calibration,
                                    table=table, level=args.level)
    results.append(robust)
    if args.classical:
        results.append(classical_one_sample_test(sample, args.mu0, args.alternative,
                                                 level=args.level))
    lines = []
    for r in results:
        lines.extend(_fmt_result(r))
    notes = []
    if calibration is Calibration.ASYMPTOTIC and sample.n < 50:
        notes.append(f"asymptotic p-value at small n={sample.n}; "
                     "consider --calibration mc with a table for this n")
    if table is not None and table.reps < MIN_REPORTED_REPS:
        notes.append(f"table has only {table.reps} replications "
                     f"(at least {MIN_REPORTED_REPS} recommended)")
    lines.extend(f"note: {m}" for m in notes)
    payload = {"tests": [r.to_dict() for r in results], "notes": notes}
    return 0, payload, lines


def _cmd_calibrate(args):
    table = build_quantile_table(args.n, args.probs, args.reps,
                                 RngSpec(args.seed, args.stream), workers=args.workers)
    save_table(table, args.out)
    payload = {"table_id": table.table_id, "n": table.n, "reps": table.reps,
               "probs": list(table.probs), "quantiles": list(table.quantiles),
               "out": args.out}
    lines = [f"wrote {args.out} ({table.table_id})"]
    lines += [f"  q({p:g}) = {q:.10g}" for p, q in zip(table.probs, table.quantiles)]
    return 0, payload, lines


def _cmd_verify_pivot(args):
    params = args.params or list(DEFAULT_PIVOT_PARAMS)
    res = verify_pivot(args.n, args.reps, args.seed, params, workers=args.workers)
    lines = [f"{'n':>6} {'mu':>10} {'sigma':>10} {'max|diff|':>12}  match"]
    for r in res["settings"]:
        lines.append(f"{r['n']:>6} {r['mu']:>10g} {r['sigma']:>10g} "
                     f"{r['max_abs_diff']:>12.3e}  {'yes' if r['match'] else 'NO'}")
    lines.append("pivot invariance: " + ("PASS" if res["passed"] else "FAIL"))
    return (0 if res["passed"] else 1), res, lines


def _cmd_verify_normality(args):
    res = verify_normality(args.grid, args.reps, args.seed, workers=args.workers)
    if args.csv:
        lines = ["n,ks,mean,variance"]
        lines += [f"{r['n']},{r['ks']!r},{r['mean']!r},{r['variance']!r}" for r in res["rows"]]
    else:
        lines = [f"{'n':>6} {'KS':>10} {'mean':>10} {'variance':>10}"]
        lines += [f"{r['n']:>6} {r['ks']:>10.5f} {r['mean']:>10.5f} {r['variance']:>10.5f}"
                  for r in res["rows"]]
        c = res["checks"]
        lines.append(f"KS decreasing (slack {c['slack']:.0%}): {c['decreasing']}; "
                     f"final KS < {c['final_limit']}: {c['final_below_limit']}")
    ok = res["checks"]["decreasing"] and res["checks"]["final_below_limit"]
    return (1 if args.strict and not ok else 0), res, lines


def _cmd_robustness(args):
    res = robustness_study(args.n, args.eps, args.shift, args.reps, args.seed,
                           level=args.level, contam_sigma=args.contam_sigma,
                           workers=args.workers)
    lines = [
        f"contamination eps={args.eps:g}, shift={args.shift:g}, n={args.n}, reps={args.reps}",
        f"  robust (asymptotic) size: {res['robust_size']:.4f} "
        f"(+/- {res['robust_size_se']:.4f})",
        f"  classical t size:         {res['classical_size']:.4f} "
        f"(+/- {res['classical_size_se']:.4f})",
        f"  nominal level:            {args.level:g}",
    ]
    return 0, res, lines


_COMMANDS = {
    "test": _cmd_test,
    "calibrate": _cmd_calibrate,
    "verify-pivot": _cmd_verify_pivot,
    "verify-normality": _cmd_verify_normality,
    "robustness-study": _cmd_robustness,
}

# flags that do not affect results and are left out of report metadata
_PRESENTATION = {"json", "csv", "workers", "command"}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, payload, lines = _COMMANDS[args.command](args)
    except RobustTError as exc:
        print(f"robust-ttest {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "json", False):
        arguments = {k: v for k, v in vars(args).items() if k not in _PRESENTATION}
        report = make_report(args.command, arguments, getattr(args, "seed", None), payload)
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())

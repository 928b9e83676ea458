"""Command-line front end.

Results go to stdout in the chosen format (table, json, or csv);
diagnostics go to stderr. Exit codes: 0 on success, 1 on invalid
arguments, 2 when an internal cross-check or reproduction row fails its
tolerance. Output is deterministic for a fixed argv and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import bounds, colbeck_dr, multiparty, reproduce, sixround_dr, strong_cf, strong_dr, weak_cf, weak_dr
from .errors import CrossCheckError, InfeasibleVariantError, QdiceError

USAGE_EXIT = 1
MISMATCH_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _fmt6(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _fmt15(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return f"{x:.15g}"
    if isinstance(x, (dict, list)):
        return json.dumps(x, separators=(",", ":"))
    return str(x)


def _emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow([_fmt15(v) for v in record.values()])
    else:
        for key, value in record.items():
            if isinstance(value, (dict, list)):
                out.write(f"{key} = {json.dumps(value, separators=(',', ':'))}\n")
            else:
                out.write(f"{key} = {_fmt6(value)}\n")


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"rows": rows, "all_pass": all(r["passed"] for r in rows)}, out, indent=2)
        out.write("\n")
        return
    columns = list(rows[0].keys())
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_fmt15(r[c]) for c in columns])
        return
    cells = [[_fmt6(r[c]) for c in columns] for r in rows]
    widths = [max(len(col), *(len(row[i]) for row in cells)) for i, col in enumerate(columns)]
    out.write("  ".join(col.ljust(widths[i]) for i, col in enumerate(columns)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for row in cells:
        out.write("  ".join(row[i].ljust(widths[i]) for i in range(len(columns))).rstrip() + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (record dict | rows list, exit code)
# ---------------------------------------------------------------------------

def _cmd_weak_cf(args) -> tuple[dict, int]:
    params = weak_cf.WeakCFParams(args.p, args.eta)
    analysis = weak_cf.alice_opt_cheat(params, grid_points=args.grid)
    return analysis.to_json_dict(), 0


def _cmd_oracle(args) -> tuple[dict, int]:
    params = weak_cf.WeakCFParams(args.p, args.eta)
    oracle = weak_cf.alice_cheat_oracle(params, grid_resolution=args.resolution)
    closed = weak_cf.alice_opt_cheat(params, grid_points=args.grid)
    record = oracle.to_json_dict()
    record["closed_form"] = closed.p_alice_star
    record["abs_diff"] = abs(oracle.p_alice_star - closed.p_alice_star)
    record["maximizer_alphas"] = list(oracle.maximizer_alphas)
    code = 0 if record["abs_diff"] <= 1e-4 else MISMATCH_EXIT
    return record, code


def _cmd_six_round(args) -> tuple[dict, int]:
    solution = sixround_dr.solve(args.variant)
    record = solution.to_json_dict()
    pa, pb, pc = sixround_dr.losing_probs_at(args.variant, solution.eta_star)
    record["losing_prob_alice"] = pa
    record["losing_prob_bob"] = pb
    record["losing_prob_claire"] = pc
    code = 0 if abs(pa - pc) <= args.tol else MISMATCH_EXIT
    return record, code


def _cmd_weak_dr(args) -> tuple[dict, int]:
    biases = tuple(float(b) for b in args.biases.split(",")) if args.biases else (0.0,) * (args.n - 1)
    spec = weak_dr.TournamentSpec(args.n, biases)
    honest = weak_dr.honest_distribution(args.n)
    check = weak_dr.bias_bound_check(spec, args.party)
    record = spec.to_json_dict()
    record["honest_party"] = args.party
    record["honest_probs"] = [float(h) for h in honest]
    record["honest_probs_exact"] = [f"{h.numerator}/{h.denominator}" for h in honest]
    record["max_losing_prob"] = weak_dr.max_losing_prob(spec, args.party)
    record["eps_bar"] = check.eps_bar
    record["bound"] = check.bound
    record["holds"] = check.holds
    return record, 0 if check.holds else MISMATCH_EXIT


def _cmd_strong_cf(args) -> tuple[dict, int]:
    params = strong_cf.solve_params(args.p0, eps0=args.eps, eps1=args.eps)
    report = strong_cf.cheat_probs(params)
    record = {"params": params.to_json_dict(), **report.to_json_dict()}
    roundtrip = abs(params.p0_honest - args.p0)
    record["honest_roundtrip_error"] = roundtrip
    return record, 0 if roundtrip <= 1e-12 else MISMATCH_EXIT


def _cmd_strong_dr(args) -> tuple[dict, int]:
    tree = strong_dr.build_tree(args.n)
    leaves = strong_dr.honest_leaf_probs(tree)
    record = {
        "n": args.n,
        "target": args.target,
        "delta": args.delta,
        "adversary_success": strong_dr.adversary_success(tree, args.target, args.delta),
        "leaf_probs": [float(p) for p in leaves],
        "leaf_probs_exact": [f"{p.numerator}/{p.denominator}" for p in leaves],
        "depth": strong_dr.depth(tree),
        "tree": tree.to_json_dict(),
    }
    uniform = all(p == Fraction(1, args.n) for p in leaves)
    return record, 0 if uniform else MISMATCH_EXIT


def _cmd_multiparty(args) -> tuple[dict, int]:
    if args.mode == "example3":
        value, bound = multiparty.three_party_example_bias()
        family = multiparty.build_3n_family(1)
        record = {
            "protocol": "three-party three-sided example",
            "coalition_value": value,
            "kitaev_bound": bound,
            "abs_gap": value - bound,
            "family_n1": family.to_json_dict(),
        }
        return record, 0 if value >= bound else MISMATCH_EXIT
    if args.m is None or args.n is None:
        raise QdiceError("pairing mode requires --m and --n")
    protocol = multiparty.build_pairing(args.m, args.n)
    probs = multiparty.honest_outcome_probs(protocol)
    value = multiparty.coalition_force_prob(protocol, args.eps_bar)
    record = protocol.to_json_dict()
    record["honest_prob_exact"] = f"{probs[0].numerator}/{probs[0].denominator}"
    record["coalition_force_prob"] = value
    record["symmetric_bound"] = bounds.symmetric_min(protocol.n_outcomes, protocol.n_parties)
    saturates = abs(value - record["symmetric_bound"]) <= 1e-12 if args.eps_bar == 0.0 else True
    return record, 0 if saturates else MISMATCH_EXIT


def _cmd_colbeck(args) -> tuple[dict, int]:
    pa, pb = colbeck_dr.cheat_probs(args.n)
    oracle = colbeck_dr.bob_cheat_oracle(args.n)
    record = {
        "n": args.n,
        "pa": float(pa),
        "pb": float(pb),
        "pa_exact": f"{pa.numerator}/{pa.denominator}",
        "pb_exact": f"{pb.numerator}/{pb.denominator}",
        "bob_oracle_exact": f"{oracle.numerator}/{oracle.denominator}",
        "oracle_matches": oracle == pb,
        "kitaev_product_times_n": float(args.n * pa * pb),
    }
    if args.runs:
        outcomes = colbeck_dr.sample_outcomes(args.n, args.runs, args.seed)
        counts = np.bincount(outcomes, minlength=args.n + 1)[1:]
        record["runs"] = args.runs
        record["empirical_freqs"] = [float(c) / args.runs for c in counts]
    return record, 0 if record["oracle_matches"] else MISMATCH_EXIT


def _cmd_bounds(args) -> tuple[dict, int]:
    with open(args.report) as fh:
        report = bounds.BiasReport.from_json_dict(json.load(fh))
    if report.n_parties == 2:
        per_outcome = bounds.kitaev_two_party(report, tol=args.tol)
        which = "kitaev_two_party"
    else:
        per_outcome = bounds.kitaev_multi(report, tol=args.tol)
        which = "kitaev_multi"
    record = {
        "check": which,
        "n_outcomes": report.n_outcomes,
        "n_parties": report.n_parties,
        "per_outcome": per_outcome,
        "all_pass": all(per_outcome),
        "symmetric_min": bounds.symmetric_min(report.n_outcomes, report.n_parties),
    }
    return record, 0 if record["all_pass"] else MISMATCH_EXIT


def _cmd_reproduce(args) -> tuple[list[dict], int]:
    rows = reproduce.build_rows(seed=args.seed)
    return rows, 0 if all(r["passed"] for r in rows) else MISMATCH_EXIT


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdice", description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-9, help="cross-check tolerance")
    parser.add_argument("--grid", type=int, default=10_000, help="delta-maximization grid points")
    parser.add_argument("--seed", type=int, default=0, help="random seed for sampled runs")
    parser.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="json")
    parser.add_argument("--output", default=None, help="write results here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weak-cf", help="three-round weak imbalanced CF cheat analysis")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.set_defaults(handler=_cmd_weak_cf)

    p = sub.add_parser("oracle", help="brute-force adversary oracle vs closed form")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--resolution", type=int, default=60)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("six-round", help="six-round weak three-sided DR solution")
    p.add_argument("--variant", choices=("case1", "case2"), default="case1")
    p.set_defaults(handler=_cmd_six_round)

    p = sub.add_parser("weak-dr", help="weak DR tournament losing probability and bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--biases", default=None, help="comma-separated stage biases")
    p.add_argument("--party", type=int, default=1)
    p.set_defaults(handler=_cmd_weak_dr)

    p = sub.add_parser("strong-cf", help="optimal strong imbalanced CF parameters and cheats")
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--eps", type=float, default=0.0)
    p.set_defaults(handler=_cmd_strong_cf)

    p = sub.add_parser("strong-dr", help="recursive-bisection strong N-sided DR")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--target", type=int, default=1)
    p.set_defaults(handler=_cmd_strong_dr)

    p = sub.add_parser("multiparty", help="2m-party pairing protocol or the 3-party example")
    p.add_argument("mode", nargs="?", choices=("pairing", "example3"), default="pairing")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--eps-bar", type=float, default=0.0)
    p.set_defaults(handler=_cmd_multiparty)

    p = sub.add_parser("colbeck", help="three-round entanglement-based strong DR")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--runs", type=int, default=0)
    p.set_defaults(handler=_cmd_colbeck)

    p = sub.add_parser("bounds", help="check a bias report against the product bounds")
    p.add_argument("action", choices=("check",))
    p.add_argument("--report", required=True, help="path to a BiasReport JSON file")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("reproduce", help="recompute headline numbers as one table")
    p.set_defaults(handler=_cmd_reproduce)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        result, code = args.handler(args)
    except (CrossCheckError, InfeasibleVariantError) as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return MISMATCH_EXIT
    except (QdiceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT

    buf = io.StringIO()
    if isinstance(result, list):
        _emit_rows(result, args.fmt, buf)
    else:
        _emit_record(result, args.fmt, buf)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

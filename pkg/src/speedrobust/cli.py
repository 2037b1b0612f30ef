"""Command-line front end: bag construction, assignment, probing, tables, sweeps.

Every subcommand prints structured data: JSON by default, CSV with
``--format csv`` (the table emitters default to CSV since they exist to be
pasted into other tools).  Exit status is 0 on success, 1 when a verification
or assignment run reports failures, 2 on usage errors.  Rationals on the
command line are ``p/q`` or plain integers; float syntax is rejected.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .bricks import (
    BRICK_ROBUSTNESS,
    bricks_bags,
    factor_table,
    normalized_surplus,
    robust_bags,
    surplus_breakpoint_table,
    surplus_integer_table,
)
from .model import BagProfile, Instance, SpeedProfile, makespan
from .numerics import format_rational, parse_rational
from .pebbles import pebbles_bags
from .sand import (
    adversary_configs,
    geometric_skeleton,
    lower_bound_probe,
    sand_bags,
    sand_robustness,
)
from .second_stage import greedy_assignment, integral_assignment, optimal_second_stage
from .verify import VerificationReport, verify_bricks_robustness, verify_bricks_success_range


def _default_workers() -> int:
    env = os.environ.get("SPEEDROBUST_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parse_values(text: str) -> list[Fraction]:
    """Inline comma- or whitespace-separated rationals, or ``@file`` with a JSON array."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            data = json.load(fh)
        values = []
        for v in data:
            if isinstance(v, float):
                raise ValueError(f"float {v!r} in {text[1:]}; use 'p/q' strings or integers")
            values.append(parse_rational(v) if isinstance(v, str) else Fraction(v))
        return values
    return [parse_rational(part) for part in text.replace(",", " ").split()]


def _json_value(value: Fraction):
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else format_rational(value)


def _emit_rows(rows: list[dict], fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(rows, stream, indent=2, default=str)
        stream.write("\n")
        return
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    writer = csv.DictWriter(stream, fieldnames=columns)
    writer.writeheader()
    writer.writerows(rows)


def _emit_report(report: VerificationReport, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(report.payload(), stream, indent=2, default=str)
        stream.write("\n")
        return
    rows = [{
        "record": "summary",
        "grid": json.dumps(report.grid, sort_keys=True),
        "checked": report.checked,
        "failure_count": len(report.failures),
        "elapsed_ms": report.elapsed_ms,
    }]
    for failure in report.failures:
        rows.append({"record": "failure", "grid": "", "checked": "", "failure_count": "",
                     "elapsed_ms": "", **{k: str(v) for k, v in failure.items()}})
    _emit_rows(rows, "csv", stream)


# -- subcommands ----------------------------------------------------------------

def _cmd_bags(args) -> int:
    mode = args.mode
    if mode == "sand":
        if args.total is None:
            raise ValueError("--mode sand requires --total")
        profile = sand_bags(args.m, args.b, args.total)
        rows = [{"bag": i, "size": _json_value(a)} for i, a in enumerate(profile.sizes)]
    elif mode == "bricks":
        if args.n is None:
            raise ValueError("--mode bricks requires --n")
        solution = bricks_bags(args.n, args.m, args.b, args.rho or BRICK_ROBUSTNESS)
        rows = [
            {"bag": i, "size": a, "cost": z, "total": solution.total_size,
             "successful": solution.successful}
            for i, (a, z) in enumerate(zip(solution.bag_sizes, solution.bag_costs))
        ]
    elif mode == "pebbles":
        if not args.jobs:
            raise ValueError("--mode pebbles requires --jobs")
        instance = Instance(args.jobs, args.m, args.b)
        rho = args.rho
        if rho is None:
            raise ValueError("--mode pebbles requires --rho")
        result = pebbles_bags(instance, rho)
        rows = [
            {"bag": i, "size": _json_value(a), "packed_all": result.packed_all}
            for i, a in enumerate(result.bag_sizes)
        ]
    else:  # auto
        if args.n is None:
            raise ValueError("--mode auto requires --n")
        profile = robust_bags(args.n, args.m, args.b)
        rows = [{"bag": i, "size": _json_value(a)} for i, a in enumerate(profile.sizes)]
    _emit_rows(rows, args.format or "json", sys.stdout)
    return 0


def _cmd_assign(args) -> int:
    rho = args.rho or BRICK_ROBUSTNESS
    bag_values = args.bags
    speed_values = args.speeds
    trace: list[dict] | None = [] if args.trace else None

    if args.algo == "greedy":
        bags = BagProfile(bag_values)
        speeds = SpeedProfile(speed_values)
        assignment = greedy_assignment(bags, speeds, rho, trace)
        value = makespan(assignment, bags, speeds) if assignment else None
    elif args.algo == "integral":
        if any(v.denominator != 1 for v in bag_values + speed_values):
            raise ValueError("--algo integral needs integer bag sizes and speeds")
        sizes = sorted((int(v) for v in bag_values), reverse=True)
        speeds_int = [int(v) for v in speed_values]
        assignment = integral_assignment(sizes, speeds_int, rho, trace)
        if assignment:
            value = makespan(assignment, BagProfile(sizes), SpeedProfile(speed_values))
        else:
            value = None
    else:  # optimal
        bags = BagProfile(bag_values)
        speeds = SpeedProfile(speed_values)
        value, assignment = optimal_second_stage(bags, speeds)

    ok = assignment is not None
    sorted_bags = sorted((Fraction(v) for v in bag_values), reverse=True)
    rows = []
    owners = assignment.machine_of_bag if assignment else ()
    for k, size in enumerate(sorted_bags):
        row = {
            "bag": k,
            "size": _json_value(size),
            "machine": owners[k] if k < len(owners) else None,
            "ok": ok,
            "makespan": _json_value(value) if value is not None else None,
        }
        if trace is not None and k < len(trace):
            row["before"] = _json_value(trace[k]["before"])
            row["after"] = _json_value(trace[k]["after"])
        rows.append(row)
    _emit_rows(rows, args.format or "json", sys.stdout)
    return 0 if ok else 1


def _cmd_probe(args) -> int:
    skeleton = geometric_skeleton(args.m, args.b)
    if args.bags:
        profile = BagProfile(args.bags)
    else:
        profile = sand_bags(args.m, args.b, skeleton.scale)
    bound = sand_robustness(args.m, args.b)
    value = lower_bound_probe(args.m, args.b, profile)
    rows = []
    for k, config in enumerate(adversary_configs(args.m, args.b)):
        best, _ = optimal_second_stage(profile, config)
        rows.append({
            "config": k,
            "weight": str(skeleton.weights[k]),
            "speeds": " ".join(format_rational(s) for s in config.speeds),
            "best_makespan": format_rational(best),
            "probe": format_rational(value),
            "tight_bound": format_rational(bound),
        })
    _emit_rows(rows, args.format or "json", sys.stdout)
    return 0


def _cmd_tables(args) -> int:
    if args.which == "f":
        rows = factor_table(args.zmax, args.rho or BRICK_ROBUSTNESS)
    elif args.which == "surplus":
        rows = surplus_integer_table(args.lambda_max)
    else:  # breakpoints
        rows = surplus_breakpoint_table(Fraction(args.lambda_max) + 1)
    _emit_rows(rows, args.format or "csv", sys.stdout)
    return 0


def _cmd_verify_range(args) -> int:
    report = verify_bricks_success_range(
        args.m_max, args.lambda_max, args.rho or BRICK_ROBUSTNESS, workers=args.workers
    )
    _emit_report(report, args.format or "json", sys.stdout)
    return 0 if report.ok else 1


def _cmd_verify_robust(args) -> int:
    report = verify_bricks_robustness(args.n, args.m, samples=args.samples, seed=args.seed)
    _emit_report(report, args.format or "json", sys.stdout)
    return 0 if report.ok else 1


def _cmd_surplus(args) -> int:
    value = normalized_surplus(args.lam)
    from .bricks import decimal_string

    rows = [{
        "lambda": format_rational(args.lam),
        "surplus": format_rational(value),
        "decimal": decimal_string(value, 3),
    }]
    _emit_rows(rows, args.format or "json", sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="speedrobust",
        description="Bag construction and verification for scheduling with unknown machine speeds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["json", "csv"], default=None)

    p = sub.add_parser("bags", help="build a bag profile")
    p.add_argument("--mode", choices=["sand", "pebbles", "bricks", "auto"], required=True)
    p.add_argument("--m", type=int, required=True, help="number of machines")
    p.add_argument("--b", type=int, required=True, help="number of bags")
    p.add_argument("--n", type=int, help="number of unit jobs (bricks/auto)")
    p.add_argument("--total", type=parse_rational, help="total divisible load (sand)")
    p.add_argument("--jobs", type=_parse_values, help="job sizes: inline p/q,... or @file")
    p.add_argument("--rho", type=parse_rational, help="target robustness factor")
    add_format(p)
    p.set_defaults(func=_cmd_bags)

    p = sub.add_parser("assign", help="assign bags to machines")
    p.add_argument("--algo", choices=["greedy", "integral", "optimal"], required=True)
    p.add_argument("--bags", type=_parse_values, required=True)
    p.add_argument("--speeds", type=_parse_values, required=True)
    p.add_argument("--rho", type=parse_rational)
    p.add_argument("--trace", action="store_true", help="include per-step capacity columns")
    add_format(p)
    p.set_defaults(func=_cmd_assign)

    p = sub.add_parser("probe", help="probe a bag profile against the adversary family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--bags", type=_parse_values,
                   help="profile summing to m**b; defaults to the sand profile")
    add_format(p)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("tables", help="emit the analysis tables")
    p.add_argument("--which", choices=["f", "surplus", "breakpoints"], required=True)
    p.add_argument("--zmax", type=int, default=60)
    p.add_argument("--lambda-max", dest="lambda_max", type=int, default=60)
    p.add_argument("--rho", type=parse_rational)
    add_format(p)
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("verify-range", help="sweep the coin construction for total size >= n")
    p.add_argument("--m-max", dest="m_max", type=int, required=True)
    p.add_argument("--lambda-max", dest="lambda_max", type=int, required=True)
    p.add_argument("--rho", type=parse_rational)
    p.add_argument("--workers", type=int, default=_default_workers())
    add_format(p)
    p.set_defaults(func=_cmd_verify_range)

    p = sub.add_parser("verify-robust", help="assign the dispatcher bags under every integral adversary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(func=_cmd_verify_robust)

    p = sub.add_parser("surplus", help="normalized surplus at one jobs-per-machine ratio")
    p.add_argument("--lam", type=parse_rational, required=True,
                   help="jobs-per-machine ratio as p/q")
    add_format(p)
    p.set_defaults(func=_cmd_surplus)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

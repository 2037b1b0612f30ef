#!/usr/bin/env python3
"""Regenerate the three analysis tables as CSV files.

Writes factor.csv (transformation factor for costs 2..60), surplus.csv
(normalized surplus at integer jobs-per-machine ratios 1..60), and
breakpoints.csv (the 22 ratios where a bag cost stops being used) into the
chosen output directory.
"""

import argparse
import csv
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from fractions import Fraction

from speedrobust.bricks import (
    BRICK_ROBUSTNESS,
    factor_table,
    surplus_breakpoint_table,
    surplus_integer_table,
)


def write_csv(path: pathlib.Path, rows: list[dict]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out", help="output directory (default: out/)")
    parser.add_argument("--zmax", type=int, default=60)
    parser.add_argument("--lambda-max", dest="lambda_max", type=int, default=60)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / "factor.csv", factor_table(args.zmax, BRICK_ROBUSTNESS))
    write_csv(out / "surplus.csv", surplus_integer_table(args.lambda_max))
    write_csv(out / "breakpoints.csv", surplus_breakpoint_table(Fraction(args.lambda_max) + 1))
    return 0


if __name__ == "__main__":
    sys.exit(main())

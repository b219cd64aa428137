"""Run the timing grid and write bench.csv next to the repository root.

Usage: python scripts/run_bench.py [--grid U2:5,10,20,40;U3:4,8,16] [--field 7] [--seed 0]
"""
import argparse
import os
import sys

from algdet.bench import DEFAULT_GRID, records_to_csv, run_bench
from algdet.exactfield import parse_field


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", default=DEFAULT_GRID)
    ap.add_argument("--field", nargs="+", default=["GF", "7"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "bench.csv"))
    args = ap.parse_args(argv)
    records, mismatches = run_bench(parse_field(args.field), args.grid, args.seed)
    text = records_to_csv(records)
    with open(args.out, "w") as fh:
        fh.write(text)
    sys.stdout.write(text)
    for r in records:
        print("# %s n=%d checked by %s, %d inner operations" % (r.family, r.n, r.verified_by, r.ops))
    if mismatches:
        print("# MISMATCH: %s" % mismatches)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Re-run the smallest-first clause gadget search and compare with the shipped constant.

Usage: python scripts/synthesize_clause_gadget.py [--budget 5]
"""
import argparse
import sys
import time

from algdet.errors import GadgetError
from algdet.exactfield import GF
from algdet.reduction.gadgets import CLAUSE_GADGET, synthesize_clause_gadget, verify_clause_gadget


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=5)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        shape = synthesize_clause_gadget(args.budget)
    except GadgetError as exc:
        print("no gadget within %d vertices: %s (%.1fs)" % (args.budget, exc, time.perf_counter() - t0))
        return 1
    print("found in %.1fs: n=%d edges=%s externals=%s marker=%s" % (
        time.perf_counter() - t0, shape.n, shape.edges, shape.externals, shape.marker))
    check = verify_clause_gadget(GF(7), shape)
    print("P1 %s  P2 %s  P3 %s  shared signed weight %s" % (
        check.p1, check.p2, check.p3, check.shared_signed_weight))
    print("matches shipped constant: %s" % (shape == CLAUSE_GADGET))
    return 0 if check.passed else 1


if __name__ == "__main__":
    sys.exit(main())

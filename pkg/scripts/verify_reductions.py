"""End-to-end reduction table: det(H) = aI + bJ and per(G) for a list of formulas.

Usage: python scripts/verify_reductions.py [--primes 5 7 13] [--skip-permanent]
"""
import argparse
import sys

from algdet import guards
from algdet.exactfield import GF, QQ
from algdet.reduction.cnf import count_sat_bruteforce, formula
from algdet.reduction.compile import (blockwise_det, build_h0, consistent_cover_sum,
                                      verify_reduction, verify_scalar_reduction)

FORMULAS = [formula(1, (1, 1, 1)), formula(1, (1, 1, -1)),
            formula(2, (1, 2, 2)), formula(2, (-1, 2, 2))]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 13])
    ap.add_argument("--skip-permanent", action="store_true")
    args = ap.parse_args(argv)
    ok = True
    print("%-18s %3s %5s %4s %4s %4s  %s" % ("formula", "S", "field", "n", "a", "b", "a+b = 64 S"))
    for phi in FORMULAS:
        S = count_sat_bruteforce(phi)
        for p in args.primes:
            with guards.override(expansion=26):
                r = verify_reduction(phi, GF(p))
            ok &= r.passed
            print("%-18s %3d %5s %4d %4s %4s  %s" % (phi, S, "GF%d" % p, r.vertices, r.a, r.b,
                                                    "yes" if r.passed else "NO"))
    print()
    print("H0 (disjoint gadgets, QQ): blockwise det vs sum over consistent covers")
    for phi in FORMULAS:
        G0 = build_h0(phi, QQ)
        print("%-18s det = %s I   consistent = %s I   S = %d" % (
            phi, blockwise_det(G0)[0], consistent_cover_sum(phi, G0)[0], count_sat_bruteforce(phi)))
    if not args.skip_permanent:
        print()
        for phi in FORMULAS:
            per, target, n = verify_scalar_reduction(phi, QQ)
            ok &= per == target
            print("%-18s per(G) = %s on %d vertices, 64 S = %s" % (phi, per, n, target))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

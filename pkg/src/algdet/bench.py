"""Timing grid for the polynomial algorithms, with oracle-checked checksums."""
from __future__ import annotations

import csv
import hashlib
import io
import random
import time
from dataclasses import dataclass

from . import guards
from .algebra import AlgMatrix, diagonal, direct_sum, field_algebra, upper_triangular
from .determinant import (det_cayley_bruteforce, det_cayley_expansion, det_commutative,
                          det_general, det_upper_triangular, nondecreasing_sequences)
from .errors import ParseError
from .exactfield import FieldSpec
from .structure import wm_decompose

CSV_HEADER = ("family", "n", "d", "algorithm", "ms", "checksum")

# family letter -> (constructor, algorithm name)
FAMILIES = {
    "U": (lambda spec, d: upper_triangular(spec, d), "upper"),
    "D": (lambda spec, d: diagonal(spec, d), "commutative"),
    "S": (lambda spec, d: direct_sum(diagonal(spec, d), upper_triangular(spec, d)), "general"),
}

DEFAULT_GRID = "U2:5,10,20,40;U3:4,8,16"


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    d: int
    algorithm: str
    ms: float
    checksum: str
    ops: int                 # scalar determinants (upper) or (S, f) pairs (general); 0 otherwise
    verified_by: str | None  # oracle that reproduced the checksum, if n allowed one

    def row(self):
        return (self.family, self.n, self.d, self.algorithm, "%.1f" % self.ms, self.checksum)


def checksum(x) -> str:
    spec = x.algebra.spec
    text = ",".join(spec.format_raw(c) for c in x.coords)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def parse_grid(text: str):
    """``"U2:5,10;U3:4"`` -> [("U", 2, [5, 10]), ("U", 3, [4])]."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        try:
            fam, sizes = part.split(":")
            letter, d = fam[0].upper(), int(fam[1:])
            ns = [int(s) for s in sizes.split(",") if s.strip()]
        except ValueError:
            raise ParseError("bad grid entry %r (expected e.g. U2:5,10,20)" % part) from None
        if letter not in FAMILIES:
            raise ParseError("unknown family %r (choose from %s)" % (letter, ", ".join(FAMILIES)))
        out.append((letter, d, ns))
    return out


def _oracle(M):
    g = guards.current()
    if M.n <= g.bruteforce:
        return det_cayley_bruteforce(M), "bruteforce"
    if M.n <= min(g.expansion, 12):
        return det_cayley_expansion(M), "expansion"
    return None, None


def diagonal_strands_agree(M, value) -> bool:
    """Partial check for large U_d inputs: each diagonal coordinate is the
    determinant of the scalar matrix of that diagonal entry (projection onto
    a diagonal position is a homomorphism), recomputed by the clow program."""
    A = M.algebra
    F = field_algebra(A.spec)
    for k, lbl in enumerate(A.labels):
        body = lbl[1:]
        p, q = body.split("_") if "_" in body else (body[0], body[1:])
        if p != q:
            continue
        S = AlgMatrix(F, tuple(tuple((e[k],) for e in row) for row in M.entries))
        if det_commutative(S).coords[0] != value.coords[k]:
            return False
    return True


def run_bench(spec: FieldSpec, grid: str = DEFAULT_GRID, seed: int = 0, verify: bool = True):
    """Returns (records, mismatches); a mismatch is a record whose oracle disagreed."""
    rng = random.Random(seed)
    records, mismatches = [], []
    for letter, d, ns in parse_grid(grid):
        make, algo = FAMILIES[letter]
        A = make(spec, d)
        W = wm_decompose(A) if algo == "general" else None
        nil = W.nilpotency_index if W else (d if letter == "U" else 1)
        for n in ns:
            M = AlgMatrix.random(A, n, rng)
            t0 = time.perf_counter()
            if algo == "upper":
                value = det_upper_triangular(M)
                ops = sum(sum(1 for _ in nondecreasing_sequences(n - 1, p, q))
                          for p in range(d) for q in range(p, d)) if n else 0
            elif algo == "commutative":
                value = det_commutative(M)
                ops = 0
            else:
                ws = []
                value = det_general(M, W, workspace=ws)
                ops = ws[0].pairs_seen
            ms = (time.perf_counter() - t0) * 1000
            rec_sum = checksum(value)
            verified = None
            if verify:
                ref, verified = _oracle(M)
                if ref is not None and checksum(ref) != rec_sum:
                    mismatches.append((letter + str(d), n))
                elif ref is None and letter == "U":
                    verified = "diagonal-clow"
                    if not diagonal_strands_agree(M, value):
                        mismatches.append((letter + str(d), n))
            records.append(BenchRecord(letter + str(d), n, nil, algo, ms, rec_sum, ops, verified))
    return records, mismatches


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()

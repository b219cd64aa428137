"""Cayley determinants and permanents of matrices over algebras.

The Cayley determinant multiplies each permutation's entries strictly in row
order: ``sum_sigma sgn(sigma) m[0][sigma(0)] m[1][sigma(1)] ...``.

Oracles (exponential): :func:`det_cayley_bruteforce`, :func:`per_bruteforce`,
:func:`det_cayley_expansion`, :func:`per_ryser`.
Polynomial algorithms: :func:`det_commutative`, :func:`det_upper_triangular`
(``poly(N^d)``) and :func:`det_general` (``N^O(d)``); :func:`det_auto` picks one.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import guards, linalg
from .algebra import (AlgebraElement, AlgMatrix, commutativity_witness, phi_embed,
                      tensor_power)
from .errors import PreconditionError
from .structure import DichotomyReport, WMDecomposition, classify, wm_decompose


def _elem(M: AlgMatrix, coords) -> AlgebraElement:
    return AlgebraElement(M.algebra, coords)


def permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def _perm_sum(M: AlgMatrix, signed: bool, guard):
    guards.check("bruteforce", M.n, guard)
    A = M.algebra
    acc = [0] * A.dim
    for perm in itertools.permutations(range(M.n)):
        prod = A.unit
        for i, j in enumerate(perm):
            e = M.entries[i][j]
            if not any(e):
                prod = None
                break
            prod = A.mul(prod, e)
        if prod is None:
            continue
        s = permutation_sign(perm) if signed else 1
        for k, v in enumerate(prod):
            if v:
                acc[k] += s * v
    return _elem(M, A.spec.reduce_vec(acc))


def det_cayley_bruteforce(M: AlgMatrix, guard: int | None = None) -> AlgebraElement:
    """Row-ordered permutation sum; n <= 8 unless the guard is raised."""
    return _perm_sum(M, True, guard)


def per_bruteforce(M: AlgMatrix, guard: int | None = None) -> AlgebraElement:
    return _perm_sum(M, False, guard)


def det_cayley_expansion(M: AlgMatrix, guard: int | None = None) -> AlgebraElement:
    """First-row Laplace expansion, memoised on the set of unused columns.

    ``m[i][j]`` is always the leftmost factor of what remains, so the recursion
    ``D(i, S) = sum_j (-1)^pos(j,S) m[i][j] D(i+1, S - {j})`` is valid for the
    Cayley determinant.  Only states reachable through nonzero entries are
    visited, which keeps sparse graph matrices far below the 2^n worst case.
    """
    n = M.n
    guards.check("expansion", n, guard)
    A = M.algebra
    spec = A.spec
    if n == 0:
        return _elem(M, A.unit)
    rows = [[(j, e) for j, e in enumerate(row) if any(e)] for row in M.entries]
    # support[i] = columns with a nonzero entry in some row >= i
    support = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        support[i] = support[i + 1]
        for j, _ in rows[i]:
            support[i] |= 1 << j
    zero = A.zero_coords
    memo = {}

    def D(i, mask):
        if i == n:
            return A.unit
        if mask & ~support[i]:
            return zero
        hit = memo.get(mask)
        if hit is not None:
            return hit
        acc = [0] * A.dim
        for j, e in rows[i]:
            bit = 1 << j
            if not mask & bit:
                continue
            sub = D(i + 1, mask ^ bit)
            if not any(sub):
                continue
            prod = A.mul(e, sub)
            if bin(mask & (bit - 1)).count("1") & 1:
                for k, v in enumerate(prod):
                    acc[k] -= v
            else:
                for k, v in enumerate(prod):
                    acc[k] += v
        out = spec.reduce_vec(acc)
        memo[mask] = out   # the row index is implied by popcount(mask)
        return out

    return _elem(M, D(0, (1 << n) - 1))


# Ryser ---------------------------------------------------------------------

_CRT_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
               2147483549, 2147483543, 2147483497, 2147483489, 2147483477)


def per_ryser(M: AlgMatrix, guard: int | None = None):
    """Permanent of a scalar matrix by inclusion-exclusion over column subsets.

    Returns a :class:`FieldValue`.  Small inputs run the Gray-code loop on
    exact Python integers; larger ones go through the vectorised modular
    kernel (one pass per prime, then CRT for integer inputs).
    """
    from .exactfield import FieldValue

    n = M.n
    guards.check("ryser", n, guard)
    A = M.algebra
    if A.dim != 1:
        raise PreconditionError("per_ryser needs a scalar (1-dimensional) algebra")
    spec = A.spec
    raw = [[e[0] for e in row] for row in M.entries]
    if n == 0:
        return FieldValue(spec, spec.one)
    if spec.p is not None:
        if n <= 14:
            return FieldValue(spec, _ryser_gray(raw) % spec.p)
        return FieldValue(spec, _ryser_mod([[_centre(x, spec.p) for x in row] for row in raw], spec.p))
    # rationals: clear denominators row by row
    scale = Fraction(1)
    ints = []
    for row in raw:
        l = math.lcm(*(Fraction(x).denominator for x in row))
        ints.append([int(Fraction(x) * l) for x in row])
        scale *= l
    value = _ryser_gray(ints) if n <= 14 else _ryser_int(ints)
    return FieldValue(spec, Fraction(value) / scale)


def _ryser_gray(m) -> int:
    n = len(m)
    sums = [0] * n
    total = 0
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            for i in range(n):
                sums[i] += m[i][j]
        else:
            for i in range(n):
                sums[i] -= m[i][j]
        prev_gray = gray
        prod = 1
        for s in sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            size = bin(gray).count("1")
            total += prod if size % 2 == n % 2 else -prod
    return total


def _ryser_mod(m, p: int) -> int:
    return _ryser_residues(m, (p,))[0]


def _ryser_residues(m, primes):
    """Ryser's formula mod each prime (< 2^31), vectorised with numpy.

    Columns are split in two halves; every subset sum is ``low + high``.  Row
    sums stay exact small integers and are multiplied in groups whose product
    provably fits in int64, so only one reduction per group and prime is paid.
    """
    import numpy as np

    n = len(m)
    if any(abs(x) > 2**30 for row in m for x in row):
        # centred residues are below 2^30, so the recursion ends after one level
        return [_ryser_residues([[_centre(x, p) for x in row] for row in m], (p,))[0]
                for p in primes]
    mat = np.array(m, dtype=np.int64)
    bounds = [max(1, int(np.abs(mat[i]).sum())) for i in range(n)]
    groups, cur, cur_bound = [], [], 1
    for i in range(n):
        if cur and cur_bound * bounds[i] >= 2**62:
            groups.append(cur)
            cur, cur_bound = [], 1
        cur.append(i)
        cur_bound *= bounds[i]
    groups.append(cur)
    lo = n // 2

    def half_sums(cols):
        k = len(cols)
        subs = np.arange(1 << k, dtype=np.int64)
        bits = ((subs[:, None] >> np.arange(k)) & 1).astype(np.int64)
        sums = bits @ mat[:, cols].T if k else np.zeros((1, n), dtype=np.int64)
        return sums, bits.sum(axis=1)

    lo_sums, lo_sizes = half_sums(list(range(lo)))
    hi_sums, hi_sizes = half_sums(list(range(lo, n)))
    lo_par = (n - lo_sizes) % 2
    totals = [0] * len(primes)
    block = max(1, (1 << 17) // lo_sums.shape[0])
    for start in range(0, hi_sums.shape[0], block):
        hs = hi_sums[start:start + block]
        sums = lo_sums[None, :, :] + hs[:, None, :]            # (b, 2^lo, n) exact
        parts = []
        for g in groups:
            prod = sums[:, :, g[0]].copy()
            for i in g[1:]:
                prod *= sums[:, :, i]
            parts.append(prod)
        # sign (-1)^(n - |S|)
        neg = (lo_par[None, :] + hi_sizes[start:start + block, None]) % 2 == 1
        for k, p in enumerate(primes):
            acc = parts[0] % p
            for part in parts[1:]:
                acc = acc * (part % p) % p
            acc[neg] = (p - acc[neg]) % p
            totals[k] = (totals[k] + int(acc.sum(dtype=np.int64) % p)) % p
    return totals


def _centre(x: int, p: int) -> int:
    x %= p
    return x - p if x > p // 2 else x


def _ryser_int(m) -> int:
    bound = 1
    for row in m:
        bound *= max(1, sum(abs(x) for x in row))
    moduli = []
    prod = 1
    for p in _CRT_PRIMES:
        if prod > 2 * bound:
            break
        moduli.append(p)
        prod *= p
    if prod <= 2 * bound:
        raise PreconditionError("entries too large for the modular permanent kernel")
    residues = _ryser_residues(m, moduli)
    value = 0
    for r, p in zip(residues, moduli):
        q = prod // p
        value += r * q * pow(q, -1, p)
    value %= prod
    return value - prod if value > prod // 2 else value


# ---------------------------------------------------------------------------
# commutative algebras
# ---------------------------------------------------------------------------

def _det_clow(A, entries):
    """Division-free determinant over a commutative algebra (clow sequences).

    A clow sequence is an ordered list of closed walks with strictly increasing
    heads, every walk vertex >= its head, and n edges in total; sign
    ``(-1)^(n + #walks)``.  Non-permutation sequences cancel in pairs.
    State (head h, current vertex u) carries the signed weight so far.
    """
    n = len(entries)
    D = A.dim
    spec = A.spec
    if n == 0:
        return A.unit
    nz = [[(v, e) for v, e in enumerate(row) if any(e)] for row in entries]
    # cur[h][u]: weight of partial sequences whose open walk has head h, at u
    cur = [[None] * n for _ in range(n)]
    for h in range(n):
        cur[h][h] = A.unit
    result = [0] * D
    for step in range(n):
        nxt = [[None] * n for _ in range(n)]
        last = step == n - 1
        for h in range(n):
            for u in range(h, n):
                w = cur[h][u]
                if w is None:
                    continue
                for v, e in nz[u]:
                    if v < h:
                        continue
                    prod = A.mul(w, e)
                    if not any(prod):
                        continue
                    if v == h:
                        # close the walk: factor -1, then open a new head
                        if last:
                            for k, x in enumerate(prod):
                                result[k] -= x
                        else:
                            neg = A.neg(prod)
                            for h2 in range(h + 1, n):
                                _acc(nxt, h2, h2, neg, A)
                    elif not last:
                        _acc(nxt, h, v, prod, A)
        cur = nxt
    out = spec.reduce_vec(result)
    return out if n % 2 == 0 else A.neg(out)


def _acc(table, h, u, x, A):
    old = table[h][u]
    table[h][u] = x if old is None else A.add(old, x)


def det_commutative(M: AlgMatrix) -> AlgebraElement:
    """Clow-sequence dynamic program, O(n^4) algebra products, no division."""
    wit = commutativity_witness(M.algebra)
    if wit is not None:
        labels = M.algebra.labels
        raise PreconditionError("algebra is not commutative: %s*%s != %s*%s"
                                % (labels[wit[0]], labels[wit[1]], labels[wit[1]], labels[wit[0]]),
                                witness=wit)
    return _elem(M, _det_clow(M.algebra, M.entries))


# ---------------------------------------------------------------------------
# upper triangular matrices
# ---------------------------------------------------------------------------

def nondecreasing_sequences(length: int, lo: int, hi: int):
    """Lexicographic odometer over lo <= k_1 <= ... <= k_length <= hi."""
    if length == 0:
        yield ()
        return
    if lo > hi:
        return
    seq = [lo] * length
    while True:
        yield tuple(seq)
        pos = length - 1
        while pos >= 0 and seq[pos] == hi:
            pos -= 1
        if pos < 0:
            return
        seq[pos] += 1
        for q in range(pos + 1, length):
            seq[q] = seq[pos]


def det_upper_triangular(M: AlgMatrix) -> AlgebraElement:
    """Entry (p, q) of the determinant as a sum of scalar determinants.

    With ``k_0 = p`` and ``k_n = q``, the product of n upper triangular
    matrices has (p, q) entry ``sum over p <= k_1 <= ... <= k_{n-1} <= q`` of
    ``prod_i m_i(k_{i-1}, k_i)``, so det(M)(p, q) = sum_k det(M_k) with
    ``M_k[i][j] = m_ij(k_{i-1}, k_i)``.
    """
    A = M.algebra
    prov = A.provenance
    if prov.kind != "upper_triangular":
        raise PreconditionError("det_upper_triangular needs an upper_triangular algebra, got %s"
                                % prov.kind)
    d = prov.d
    spec = A.spec
    n = M.n
    positions = [(p, q) for p in range(d) for q in range(p, d)]
    index = {pq: k for k, pq in enumerate(positions)}
    if n == 0:
        return _elem(M, A.unit)
    # slab[a][b] = scalar matrix of (a, b) entries
    slab = {pq: [[e[k] for e in row] for row in M.entries] for pq, k in index.items()}
    zero_row = [spec.zero] * n
    out = [spec.zero] * A.dim
    for (p, q), k in index.items():
        acc = 0
        for mid in nondecreasing_sequences(n - 1, p, q):
            ks = (p,) + mid + (q,)
            mat = [slab[(ks[i], ks[i + 1])][i] if ks[i] <= ks[i + 1] else zero_row
                   for i in range(n)]
            acc += linalg.det(mat, spec)
        out[k] = spec.reduce(acc)
    return _elem(M, tuple(out))


# ---------------------------------------------------------------------------
# general easy algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SFPair:
    """Rows ``S`` (sorted) taking their radical part, and their columns ``f``."""

    S: tuple
    f: tuple       # f[k] is the column of row S[k]

    @property
    def t(self) -> int:
        return len(self.S)

    def pre(self, i: int) -> int:
        """|{i' in S : i' < i}|, the tensor slot of row i."""
        return sum(1 for s in self.S if s < i)


def enumerate_sf_pairs(n: int, d: int):
    for t in range(min(d, n + 1)):
        for S in itertools.combinations(range(n), t):
            for f in itertools.permutations(range(n), t):
                yield SFPair(S, f)


def sf_pair_count(n: int, d: int) -> int:
    return sum(math.comb(n, t) * math.perm(n, t) for t in range(min(d, n + 1)))


@dataclass
class GeneralDetWorkspace:
    decomposition: WMDecomposition
    b: list          # b[i][j]: B-part of m_ij, in coordinates of the complement algebra
    r: list          # r[i][j]: radical part of m_ij, in A's coordinates
    pairs_seen: int = 0


def _split_entries(M: AlgMatrix, W: WMDecomposition) -> GeneralDetWorkspace:
    A = M.algebra
    b, r = [], []
    for row in M.entries:
        brow, rrow = [], []
        for e in row:
            be, re_ = W.split(e)
            if A.add(be, re_) != e:
                raise PreconditionError("entry split does not sum back to the entry")
            brow.append(W.b_coordinates(be))
            rrow.append(re_)
        b.append(brow)
        r.append(rrow)
    return GeneralDetWorkspace(W, b, r)


def det_general(M: AlgMatrix, W: WMDecomposition | None = None,
                workspace: list | None = None) -> AlgebraElement:
    """Determinant over A with commutative A/R(A), by splitting ``m = b + r``.

    Products with d radical factors vanish, so only (S, f) with |S| < d
    contribute.  For each pair the B-parts between consecutive radical factors
    are collected in separate tensor slots of B^{(x)(t+1)}, where commutativity
    of B makes a clow determinant valid; the coefficients c_k of the result
    are then read back as ``e_k0 r_1 e_k1 ... r_t e_kt`` inside A.
    """
    A = M.algebra
    if W is None:
        W = wm_decompose(A)
    if W.algebra is not A:
        raise PreconditionError("decomposition belongs to another algebra")
    B = W.complement_algebra()
    wit = commutativity_witness(B)
    if wit is not None:
        raise PreconditionError("complement B is not commutative", witness=wit)
    n = M.n
    d = W.nilpotency_index
    ws = _split_entries(M, W)
    e_rows = W.B_basis.rows                # B basis in A coordinates
    m = B.dim
    spec = A.spec
    total = [0] * A.dim
    embeds = {}
    for pair in enumerate_sf_pairs(n, d):
        ws.pairs_seen += 1
        t = pair.t
        r_factors = [ws.r[i][j] for i, j in zip(pair.S, pair.f)]
        if any(not any(x) for x in r_factors):
            continue
        if t not in embeds:
            embeds[t] = [phi_embed(B, t, ell) for ell in range(t + 1)]
        T = tensor_power(B, t + 1)
        zero = T.zero_coords
        row_of = dict(zip(pair.S, pair.f))
        entries = []
        for i in range(n):
            if i in row_of:
                fi = row_of[i]
                entries.append(tuple(T.unit if j == fi else zero for j in range(n)))
            else:
                emb = embeds[t][pair.pre(i)]
                entries.append(tuple(emb.apply(ws.b[i][j]) for j in range(n)))
        c = _det_clow(T, entries)
        value = _read_off(A, c, e_rows, r_factors, m, t)
        for k, v in enumerate(value):
            total[k] += v
    if workspace is not None:
        workspace.append(ws)
    return _elem(M, spec.reduce_vec(total))


def _read_off(A, c, e_rows, r_factors, m, t):
    """sum_k c_k e_k0 r_1 e_k1 ... r_t e_kt, contracting from the right."""
    # right[idx] for the trailing slots, built slot by slot; the coefficient
    # tensor is indexed row-major, so slot 0 is the most significant digit
    spec = A.spec
    acc = [0] * A.dim
    for flat, coef in enumerate(c):
        if not coef:
            continue
        digits = []
        x = flat
        for _ in range(t + 1):
            digits.append(x % m)
            x //= m
        digits.reverse()
        prod = e_rows[digits[0]]
        for slot in range(1, t + 1):
            prod = A.mul(A.mul(prod, r_factors[slot - 1]), e_rows[digits[slot]])
            if not any(prod):
                break
        for k, v in enumerate(prod):
            acc[k] += coef * v
    return spec.reduce_vec(acc)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutoResult:
    value: AlgebraElement | None
    report: DichotomyReport
    algorithm: str | None


def det_auto(M: AlgMatrix, force_oracle: bool = False, override=None) -> AutoResult:
    """Classify the algebra and run the cheapest applicable algorithm."""
    A = M.algebra
    report = classify(A, override)
    if report.easy:
        algo = report.algorithm
        if algo == "commutative":
            return AutoResult(det_commutative(M), report, algo)
        if algo == "upper-triangular":
            return AutoResult(det_upper_triangular(M), report, algo)
        return AutoResult(det_general(M, wm_decompose(A, override)), report, "general")
    if force_oracle:
        if M.n <= guards.current().bruteforce:
            return AutoResult(det_cayley_bruteforce(M), report, "bruteforce")
        return AutoResult(det_cayley_expansion(M), report, "expansion")
    return AutoResult(None, report, None)


ALGORITHMS = {
    "bruteforce": det_cayley_bruteforce,
    "expansion": det_cayley_expansion,
    "commutative": det_commutative,
    "upper": det_upper_triangular,
    "general": det_general,
}

"""Radical, nilpotency index, Wedderburn-Malcev splitting and the easy/hard verdict.

Every routine verifies its own postconditions before returning, so the method
used to find an answer (analytic facts, trace form, lifting, user override)
never has to be trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (Algebra, Subspace, commutativity_witness, is_commutative,
                      is_subalgebra, is_two_sided_ideal, quotient, span, subalgebra,
                      subspace_intersection, subspace_product, zero_subspace)
from .errors import (AlgdetError, LiftingError, ParseError,
                     UnsupportedCharacteristicError)


@dataclass(frozen=True)
class StructureOverride:
    """User-supplied radical and/or complement rows (coordinates in A's basis)."""

    radical: tuple | None = None
    complement: tuple | None = None


def parse_structure_override(text: str, algebra: Algebra) -> StructureOverride:
    """Parse ``radical <k>`` / ``complement <k>`` blocks of coordinate rows."""
    spec = algebra.spec
    lines = [(n, ln.split("#", 1)[0].split()) for n, ln in enumerate(text.splitlines(), 1)]
    lines = [(n, toks) for n, toks in lines if toks]
    found = {}
    pos = 0
    while pos < len(lines):
        n, toks = lines[pos]
        if toks[0] not in ("radical", "complement") or len(toks) != 2:
            raise ParseError("expected 'radical <k>' or 'complement <k>'", n)
        k = int(toks[1])
        rows = []
        for n2, row in lines[pos + 1:pos + 1 + k]:
            if len(row) != algebra.dim:
                raise ParseError("row needs %d coordinates" % algebra.dim, n2)
            rows.append(tuple(spec.parse_raw(t) for t in row))
        if len(rows) != k:
            raise ParseError("block ended early", n)
        found[toks[0]] = tuple(rows)
        pos += 1 + k
    return StructureOverride(found.get("radical"), found.get("complement"))


def format_structure_override(ov: StructureOverride, algebra: Algebra) -> str:
    spec = algebra.spec
    out = []
    for name in ("radical", "complement"):
        rows = getattr(ov, name)
        if rows is not None:
            out.append("%s %d" % (name, len(rows)))
            out.extend(" ".join(spec.format_raw(c) for c in row) for row in rows)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# radical
# ---------------------------------------------------------------------------

def subspace_powers(R: Subspace, limit: int | None = None):
    """[R^1, R^2, ...] up to and including the first zero power."""
    limit = limit if limit is not None else R.algebra.dim + 1
    powers = [R]
    while powers[-1].dim > 0:
        if len(powers) > limit:
            raise AlgdetError("subspace is not nilpotent")
        powers.append(subspace_product(powers[-1], R))
    return powers


def is_nilpotent_ideal(R: Subspace) -> bool:
    if not is_two_sided_ideal(R):
        return False
    try:
        subspace_powers(R)
    except AlgdetError:
        return False
    return True


def trace_form_radical(A: Algebra) -> Subspace:
    """Kernel of ``(x, y) -> trace(L_{xy})``; equals the radical when char 0 or p > D."""
    spec = A.spec
    D = A.dim
    if spec.p is not None and spec.p <= D:
        raise UnsupportedCharacteristicError(
            "trace-form radical needs characteristic 0 or p > dim A (p=%d, dim=%d); "
            "supply the radical with --structure-file" % (spec.p, D))
    tau = [spec.reduce(sum(A.table[l][k][k] for k in range(D))) for l in range(D)]
    gram = [[spec.reduce(sum(c * t for c, t in zip(A.table[i][j], tau))) for j in range(D)]
            for i in range(D)]
    # gram is symmetric, so its left and right kernels agree
    return span(A, linalg.nullspace(gram, D, spec))


def radical(A: Algebra, override: StructureOverride | None = None) -> Subspace:
    if override is not None and override.radical is not None:
        R = span(A, override.radical)
        source = "override"
    elif A.provenance.has_structure:
        R = span(A, A.provenance.radical)
        source = "analytic"
    else:
        R = trace_form_radical(A)
        source = "trace form"
    if not is_nilpotent_ideal(R):
        raise AlgdetError("%s radical is not a nilpotent two-sided ideal" % source)
    return R


def nilpotency_index(A: Algebra, R: Subspace) -> int:
    """Least d with R^d = 0 (1 for the zero radical)."""
    if R.algebra is not A:
        raise AlgdetError("radical belongs to another algebra")
    return len(subspace_powers(R)) if R.dim else 1


# ---------------------------------------------------------------------------
# Wedderburn-Malcev decomposition
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class WMDecomposition:
    algebra: Algebra
    B_basis: Subspace
    R_basis: Subspace
    nilpotency_index: int
    _proj: list = field(repr=False, default=None)

    def __post_init__(self):
        A = self.algebra
        spec = A.spec
        rows = list(self.B_basis.rows) + list(self.R_basis.rows)
        # coords(x) in [B; R] basis: x = c @ rows  ->  c = x @ rows^{-1}
        if len(rows) != A.dim:
            raise AlgdetError("complement and radical do not split A as a direct sum")
        try:
            self._proj = linalg.inverse(rows, spec)
        except ZeroDivisionError:
            raise AlgdetError("complement and radical do not split A as a direct sum") from None

    def split(self, x):
        """(b, r) with x = b + r, b in B and r in the radical."""
        A = self.algebra
        spec = A.spec
        D = A.dim
        c = [spec.reduce(sum(x[l] * self._proj[l][m] for l in range(D) if x[l])) for m in range(D)]
        nb = self.B_basis.dim
        b = [0] * D
        for ci, row in zip(c[:nb], self.B_basis.rows):
            if ci:
                for k, v in enumerate(row):
                    b[k] += ci * v
        b = spec.reduce_vec(b)
        return b, A.sub(x, b)

    def project_B(self, x):
        return self.split(x)[0]

    def project_R(self, x):
        return self.split(x)[1]

    def complement_algebra(self) -> Algebra:
        """B as an algebra in the echelon basis of ``B_basis``; cached."""
        if not hasattr(self, "_B_alg"):
            self._B_alg = subalgebra(self.B_basis)
        return self._B_alg

    def b_coordinates(self, b):
        return self.B_basis.coordinates(b)


def check_decomposition(W: WMDecomposition) -> None:
    """Raise unless every postcondition holds."""
    A, B, R = W.algebra, W.B_basis, W.R_basis
    if not is_subalgebra(B):
        raise AlgdetError("complement is not closed under multiplication")
    if A.unit not in B:
        raise AlgdetError("complement does not contain the unit")
    if B.dim + R.dim != A.dim or subspace_intersection(B, R).dim:
        raise AlgdetError("complement and radical do not split A as a direct sum")
    if not is_two_sided_ideal(R):
        raise AlgdetError("radical is not a two-sided ideal")
    powers = subspace_powers(R)
    d = len(powers) if R.dim else 1
    if d != W.nilpotency_index:
        raise AlgdetError("nilpotency index mismatch")
    if is_commutative(quotient(A, R)) != is_commutative(subalgebra(B)):
        raise AlgdetError("A/R and the complement disagree on commutativity")


def _lift_complement(A: Algebra, R: Subspace, powers) -> Subspace:
    """Multiplicative section of A -> A/R by quadratic lifting through R^(2^i)."""
    spec = A.spec
    D = A.dim
    Q = quotient(A, R)
    keep = [c for c in range(D) if c not in R.pivots]
    m = len(keep)
    gamma = Q.table
    s = [A.basis_coords(c) for c in keep]
    zero = zero_subspace(A)

    def power(k):
        return powers[k - 1] if k <= len(powers) else zero

    level = 1
    while power(level).dim:
        P = power(level)
        P2 = power(2 * level)
        free_cols = [c for c in range(D) if c not in P2.pivots]

        def red(v):
            r = P2.reduce(v)
            return [r[c] for c in free_cols]

        def combo(coeffs, vecs):
            acc = [0] * D
            for c, v in zip(coeffs, vecs):
                if c:
                    for k, x in enumerate(v):
                        acc[k] += c * x
            return spec.reduce_vec(acc)

        rhs = []
        nP = P.dim
        eqs = []
        for i in range(m):
            for j in range(m):
                delta = A.sub(A.mul(s[i], s[j]), combo(gamma[i][j], s))
                rhs.extend(spec.reduce(-v) for v in red(delta))
                eqs.append((i, j))
        nfree = len(free_cols)
        matrix = [[spec.zero] * (m * nP) for _ in range(len(eqs) * nfree)]
        for e, (i, j) in enumerate(eqs):
            for ip in range(m):
                for u, p in enumerate(P.rows):
                    v = [0] * D
                    if ip == j:
                        v = [a + b for a, b in zip(v, A.mul(s[i], p))]
                    if ip == i:
                        v = [a + b for a, b in zip(v, A.mul(p, s[j]))]
                    g = gamma[i][j][ip]
                    if g:
                        v = [a - g * b for a, b in zip(v, p)]
                    col = ip * nP + u
                    for k, val in enumerate(red(spec.reduce_vec(v))):
                        matrix[e * nfree + k][col] = val
        try:
            x = linalg.solve(matrix, rhs, m * nP, spec)
        except AlgdetError:
            raise LiftingError("Wedderburn-Malcev lifting system is inconsistent; "
                               "supply the complement with --structure-file")
        for i in range(m):
            corr = combo(x[i * nP:(i + 1) * nP], P.rows)
            s[i] = A.add(s[i], corr)
        level *= 2
    return span(A, s)


def wm_decompose(A: Algebra, override: StructureOverride | None = None) -> WMDecomposition:
    R = radical(A, override)
    d = nilpotency_index(A, R)
    if override is not None and override.complement is not None:
        B = span(A, override.complement)
    elif A.provenance.has_structure:
        B = span(A, A.provenance.complement)
    else:
        B = _lift_complement(A, R, subspace_powers(R) if R.dim else [R])
    W = WMDecomposition(A, B, R, d)
    check_decomposition(W)
    return W


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DichotomyReport:
    verdict: str                      # "easy" or "hard"
    quotient_commutative: bool
    nilpotency_index: int
    radical_dim: int
    witness: tuple | None = None      # labels of a noncommuting pair in A/R(A)
    field_caveat: str | None = None
    algorithm: str | None = None

    @property
    def easy(self) -> bool:
        return self.verdict == "easy"

    def summary(self) -> str:
        if self.easy:
            d = self.nilpotency_index
            text = "EASY, d = %d, algorithm: %s, poly(N^%d)" % (d, self.algorithm, d)
        else:
            text = ("HARD: A/R(A) noncommutative, witness %s,%s; determinant over this "
                    "algebra is as hard as the permanent" % self.witness)
        if self.field_caveat:
            text += "\nnote: " + self.field_caveat
        return text


def _caveat(spec):
    if spec.p is None:
        return ("over QQ the M_2 reduction gives #P-hardness (characteristic 0), "
                "but the easy/hard dichotomy is not established")
    if spec.p == 2:
        return "characteristic 2 is outside the proven dichotomy (odd characteristic only)"
    return None


def preferred_algorithm(A: Algebra) -> str:
    if is_commutative(A):
        return "commutative"
    if A.provenance.kind == "upper_triangular":
        return "upper-triangular"
    return "general"


def classify(A: Algebra, override: StructureOverride | None = None) -> DichotomyReport:
    R = radical(A, override)
    Q = quotient(A, R) if R.dim < A.dim else None
    wit = commutativity_witness(Q) if Q is not None else None
    d = nilpotency_index(A, R)
    caveat = _caveat(A.spec)
    if wit is None:
        return DichotomyReport("easy", True, d, R.dim, None, caveat, preferred_algorithm(A))
    keep = [c for c in range(A.dim) if c not in R.pivots]
    labels = (A.labels[keep[wit[0]]], A.labels[keep[wit[1]]])
    return DichotomyReport("hard", False, d, R.dim, labels, caveat, None)

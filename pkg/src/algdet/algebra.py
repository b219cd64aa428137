"""Finite-dimensional unital associative algebras given by structure constants.

An :class:`Algebra` stores the dense table ``a_i * a_j`` (coordinate tuples of
raw field scalars) and derives a sparse copy that every multiplication uses.
Elements, subspaces and matrices refer to their algebra by identity.
"""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (AlgebraMismatchError, AssociativityError, NotAnIdealError,
                     PreconditionError, SpecMismatchError, UnitError)
from .exactfield import FieldSpec, FieldValue


@dataclass(frozen=True)
class Provenance:
    """How an algebra was built, plus any structure facts known analytically.

    ``radical`` and ``complement`` are coordinate rows spanning the Jacobson
    radical and a Wedderburn-Malcev complement, when the constructor knows them.
    """

    kind: str = "generic"
    d: int | None = None
    radical: tuple | None = None
    complement: tuple | None = None

    @property
    def has_structure(self) -> bool:
        return self.radical is not None and self.complement is not None


class Algebra:
    def __init__(self, spec: FieldSpec, table, unit, labels=None, provenance=None):
        dim = len(table)
        if dim < 1:
            raise ValueError("algebra dimension must be at least 1")
        if any(len(row) != dim or any(len(v) != dim for v in row) for row in table):
            raise ValueError("structure table must be D x D of length-D vectors")
        if len(unit) != dim:
            raise ValueError("unit must have %d coordinates" % dim)
        self.spec = spec
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple("a%d" % (i + 1) for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("need %d basis labels" % dim)
        self.table = tuple(tuple(spec.reduce_vec(v) for v in row) for row in table)
        self.unit = spec.reduce_vec(unit)
        self.provenance = provenance or Provenance()
        # sparse[i] = list of (j, [(k, c), ...]) for nonzero products a_i a_j
        self._sparse = [[(j, [(k, c) for k, c in enumerate(v) if c])
                         for j, v in enumerate(row) if any(v)] for row in self.table]
        self._sparse_by_j = [dict(r) for r in self._sparse]
        self._tensor_powers = {1: self}
        self._check_unit()
        self._check_associative()

    # raw coordinate arithmetic --------------------------------------------

    def mul(self, x, y):
        acc = [0] * self.dim
        ynz = [(j, yj) for j, yj in enumerate(y) if yj]
        if not ynz:
            return self.zero_coords
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self._sparse_by_j[i]
            for j, yj in ynz:
                terms = row.get(j)
                if terms:
                    s = xi * yj
                    for k, c in terms:
                        acc[k] += s * c
        return self.spec.reduce_vec(acc)

    def add(self, x, y):
        return self.spec.reduce_vec(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return self.spec.reduce_vec(a - b for a, b in zip(x, y))

    def neg(self, x):
        return self.spec.reduce_vec(-a for a in x)

    def scale(self, c, x):
        return self.spec.reduce_vec(c * a for a in x)

    @property
    def zero_coords(self):
        return (self.spec.zero,) * self.dim

    def basis_coords(self, i):
        return tuple(self.spec.one if k == i else self.spec.zero for k in range(self.dim))

    # element-level API ----------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        coords = tuple(c.value if isinstance(c, FieldValue) else c for c in coords)
        if len(coords) != self.dim:
            raise ValueError("expected %d coordinates, got %d" % (self.dim, len(coords)))
        return AlgebraElement(self, self.spec.reduce_vec(coords))

    def basis(self, i) -> "AlgebraElement":
        if isinstance(i, str):
            i = self.labels.index(i)
        return AlgebraElement(self, self.basis_coords(i))

    def __getitem__(self, label) -> "AlgebraElement":
        return self.basis(label)

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, self.zero_coords)

    def random_coords(self, rng: random.Random):
        return tuple(random_scalar(self.spec, rng) for _ in range(self.dim))

    def random_element(self, rng: random.Random) -> "AlgebraElement":
        return AlgebraElement(self, self.random_coords(rng))

    def product_of(self, factors):
        out = self.unit
        for f in factors:
            out = self.mul(out, f)
        return out

    # validation -----------------------------------------------------------

    def _check_unit(self):
        for i in range(self.dim):
            e = self.basis_coords(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise UnitError(i, self.labels)

    def _check_associative(self):
        D = self.dim
        for i in range(D):
            for j in range(D):
                left = self.table[i][j]
                for k in range(D):
                    lhs = self._mul_basis_right(left, k)
                    rhs = self._mul_basis_left(i, self.table[j][k])
                    if lhs != rhs:
                        raise AssociativityError(i, j, k, self.labels)

    def _mul_basis_right(self, x, k):
        acc = [0] * self.dim
        for l, xl in enumerate(x):
            if xl:
                terms = self._sparse_by_j[l].get(k)
                if terms:
                    for m, c in terms:
                        acc[m] += xl * c
        return self.spec.reduce_vec(acc)

    def _mul_basis_left(self, i, y):
        acc = [0] * self.dim
        row = self._sparse_by_j[i]
        for l, yl in enumerate(y):
            if yl:
                terms = row.get(l)
                if terms:
                    for m, c in terms:
                        acc[m] += yl * c
        return self.spec.reduce_vec(acc)

    def __repr__(self):
        prov = self.provenance.kind + ("(%d)" % self.provenance.d if self.provenance.d else "")
        return "<Algebra %s dim=%d over %s>" % (prov, self.dim, self.spec)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: Algebra
    coords: tuple

    def _same(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected an algebra element, got %r" % type(other).__name__)
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")
        return other

    def __add__(self, other):
        other = self._same(other)
        return AlgebraElement(self.algebra, self.algebra.add(self.coords, other.coords))

    def __sub__(self, other):
        other = self._same(other)
        return AlgebraElement(self.algebra, self.algebra.sub(self.coords, other.coords))

    def __neg__(self):
        return AlgebraElement(self.algebra, self.algebra.neg(self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            other = self._same(other)
            return AlgebraElement(self.algebra, self.algebra.mul(self.coords, other.coords))
        return self.__rmul__(other)

    def __rmul__(self, scalar):
        if isinstance(scalar, FieldValue):
            scalar = scalar.value
        c = self.algebra.spec.reduce(scalar)
        return AlgebraElement(self.algebra, self.algebra.scale(c, self.coords))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def __bool__(self):
        return any(self.coords)

    @property
    def values(self):
        return tuple(FieldValue(self.algebra.spec, c) for c in self.coords)

    def __str__(self):
        spec = self.algebra.spec
        terms = ["%s*%s" % (spec.format_raw(c), lbl) for c, lbl in zip(self.coords, self.algebra.labels) if c]
        return " + ".join(terms) if terms else "0"


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def alg_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def alg_neg(x: AlgebraElement) -> AlgebraElement:
    return -x


def alg_scale(c, x: AlgebraElement) -> AlgebraElement:
    return c * x


def random_scalar(spec: FieldSpec, rng: random.Random):
    if spec.p is not None:
        return rng.randrange(spec.p)
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def make_algebra(spec: FieldSpec, dim: int, structure, unit, labels=None) -> Algebra:
    """Validated algebra from a ``dim x dim`` table of coordinate vectors."""
    if len(structure) != dim:
        raise ValueError("table has %d rows, expected %d" % (len(structure), dim))
    return Algebra(spec, structure, unit, labels)


def _unit_rows(idx, dim, spec):
    return tuple(tuple(spec.one if k == i else spec.zero for k in range(dim)) for i in idx)


def _label(p, q, d):
    return "E%d%d" % (p, q) if d < 10 else "E%d_%d" % (p, q)


def _matrix_unit_algebra(spec, d, positions, kind, radical_idx, complement_idx):
    index = {pq: n for n, pq in enumerate(positions)}
    D = len(positions)
    zero = (spec.zero,) * D
    table = []
    for (p, q) in positions:
        row = []
        for (r, s) in positions:
            if q == r and (p, s) in index:
                v = list(zero)
                v[index[(p, s)]] = spec.one
                row.append(tuple(v))
            else:
                row.append(zero)
        table.append(row)
    unit = [spec.zero] * D
    for p in range(1, d + 1):
        unit[index[(p, p)]] = spec.one
    prov = Provenance(kind, d, _unit_rows(radical_idx(index), D, spec),
                      _unit_rows(complement_idx(index), D, spec))
    return Algebra(spec, table, unit, [_label(p, q, d) for p, q in positions], prov)


def matrix_algebra(spec: FieldSpec, d: int) -> Algebra:
    """M_d(F) with the matrix units E_pq in row-major order."""
    if d < 1:
        raise ValueError("d must be >= 1")
    positions = [(p, q) for p in range(1, d + 1) for q in range(1, d + 1)]
    return _matrix_unit_algebra(spec, d, positions, "matrix",
                                lambda ix: [], lambda ix: sorted(ix.values()))


def upper_triangular(spec: FieldSpec, d: int) -> Algebra:
    """U_d(F); basis E_pq for p <= q, row-major."""
    if d < 1:
        raise ValueError("d must be >= 1")
    positions = [(p, q) for p in range(1, d + 1) for q in range(p, d + 1)]
    return _matrix_unit_algebra(
        spec, d, positions, "upper_triangular",
        lambda ix: [n for (p, q), n in ix.items() if p < q],
        lambda ix: [n for (p, q), n in ix.items() if p == q])


def diagonal(spec: FieldSpec, d: int) -> Algebra:
    if d < 1:
        raise ValueError("d must be >= 1")
    positions = [(p, p) for p in range(1, d + 1)]
    return _matrix_unit_algebra(spec, d, positions, "diagonal",
                                lambda ix: [], lambda ix: sorted(ix.values()))


@functools.lru_cache(maxsize=None)
def field_algebra(spec: FieldSpec) -> Algebra:
    """The ground field as a 1-dimensional algebra (one shared instance per field)."""
    one = spec.one
    return Algebra(spec, [[(one,)]], (one,), ["1"],
                   Provenance("diagonal", 1, (), ((one,),)))


def strictly_upper(algebra: Algebra) -> "Subspace":
    """The strictly upper triangular matrices inside ``U_d``, as a subspace."""
    if algebra.provenance.kind != "upper_triangular":
        raise PreconditionError("strictly_upper needs an upper_triangular algebra")
    rows = [algebra.basis_coords(i) for i, lbl in enumerate(algebra.labels)
            if _is_strict(lbl)]
    return span(algebra, rows)


def _is_strict(label):
    body = label[1:]
    p, q = body.split("_") if "_" in body else (body[0], body[1:])
    return int(p) < int(q)


def direct_sum(A: Algebra, B: Algebra) -> Algebra:
    _same_field(A, B)
    spec = A.spec
    DA, DB = A.dim, B.dim
    D = DA + DB
    zero = (spec.zero,) * D
    table = []
    for i in range(D):
        row = []
        for j in range(D):
            if i < DA and j < DA:
                row.append(A.table[i][j] + (spec.zero,) * DB)
            elif i >= DA and j >= DA:
                row.append((spec.zero,) * DA + B.table[i - DA][j - DA])
            else:
                row.append(zero)
        table.append(row)
    labels = ["1." + l for l in A.labels] + ["2." + l for l in B.labels]
    prov = Provenance("direct_sum")
    if A.provenance.has_structure and B.provenance.has_structure:
        pa, pb = A.provenance, B.provenance
        lift_a = lambda rows: tuple(r + (spec.zero,) * DB for r in rows)
        lift_b = lambda rows: tuple((spec.zero,) * DA + r for r in rows)
        prov = Provenance("direct_sum", None, lift_a(pa.radical) + lift_b(pb.radical),
                          lift_a(pa.complement) + lift_b(pb.complement))
    return Algebra(spec, table, A.unit + B.unit, labels, prov)


def kron(x, y):
    return tuple(a * b for a in x for b in y)


def tensor_product(A: Algebra, B: Algebra) -> Algebra:
    """A (x) B with basis a_i (x) b_j at index ``i * dim(B) + j``."""
    _same_field(A, B)
    spec = A.spec
    table = []
    for i in range(A.dim):
        for j in range(B.dim):
            table.append([spec.reduce_vec(kron(A.table[i][k], B.table[j][l]))
                          for k in range(A.dim) for l in range(B.dim)])
    labels = ["%s*%s" % (a, b) for a in A.labels for b in B.labels]
    prov = Provenance("tensor")
    if A.provenance.has_structure and B.provenance.has_structure:
        # over perfect fields R(A (x) B) = R(A) (x) B + A (x) R(B)
        pa, pb = A.provenance, B.provenance
        full_a = [A.basis_coords(i) for i in range(A.dim)]
        full_b = [B.basis_coords(i) for i in range(B.dim)]
        rad = [kron(r, b) for r in pa.radical for b in full_b] + \
              [kron(a, r) for a in full_a for r in pb.radical]
        rad_rows, _ = linalg.rref(rad, spec) if rad else ([], [])
        comp = [spec.reduce_vec(kron(x, y)) for x in pa.complement for y in pb.complement]
        prov = Provenance("tensor", None, tuple(rad_rows), tuple(comp))
    return Algebra(spec, table, spec.reduce_vec(kron(A.unit, B.unit)), labels, prov)


def tensor_power(B: Algebra, k: int) -> Algebra:
    """B^{(x)k}; cached on ``B`` so repeated requests reuse one table."""
    if k < 1:
        raise ValueError("tensor power must be >= 1")
    cache = B._tensor_powers
    if k not in cache:
        cache[k] = tensor_product(tensor_power(B, k - 1), B)
    return cache[k]


def quotient(A: Algebra, ideal: "Subspace") -> Algebra:
    """A / I with basis the cosets of the input basis vectors not pivotal in I."""
    if ideal.algebra is not A:
        raise AlgebraMismatchError("ideal belongs to another algebra")
    if not is_two_sided_ideal(ideal):
        raise NotAnIdealError("subspace is not a two-sided ideal")
    keep = [c for c in range(A.dim) if c not in ideal.pivots]
    if not keep:
        raise NotAnIdealError("quotient by the whole algebra is the zero ring")

    def project(v):
        r = ideal.reduce(v)
        return tuple(r[c] for c in keep)

    table = [[project(A.table[i][j]) for j in keep] for i in keep]
    labels = ["[%s]" % A.labels[i] for i in keep]
    prov = Provenance("quotient")
    known = A.provenance
    if known.has_structure:
        R = span(A, known.radical)
        if all(row in R for row in ideal.rows):
            # I inside R(A): R(A/I) = R(A)/I, and the complement maps isomorphically
            nonzero = lambda rows: tuple(v for v in map(project, rows) if any(v))
            prov = Provenance("quotient", None, nonzero(known.radical), nonzero(known.complement))
    return Algebra(A.spec, table, project(A.unit), labels, prov)


def change_basis(A: Algebra, P) -> Algebra:
    """Same algebra written in the basis ``a'_i = sum_j P[i][j] a_j``."""
    spec = A.spec
    P = [spec.reduce_vec(row) for row in P]
    Pinv = linalg.inverse(P, spec)
    D = A.dim

    def to_new(v):
        return tuple(spec.reduce(sum(v[l] * Pinv[l][m] for l in range(D))) for m in range(D))

    table = [[to_new(A.mul(P[i], P[j])) for j in range(D)] for i in range(D)]
    return Algebra(spec, table, to_new(A.unit), ["b%d" % (i + 1) for i in range(D)])


def subalgebra(sub: "Subspace", labels=None) -> Algebra:
    """The subspace as an algebra in its own echelon basis (must contain 1)."""
    A = sub.algebra
    rows = sub.rows
    table = [[sub.coordinates(A.mul(x, y)) for y in rows] for x in rows]
    return Algebra(A.spec, table, sub.coordinates(A.unit),
                   labels or ["e%d" % (i + 1) for i in range(len(rows))])


def _same_field(A, B):
    if A.spec != B.spec:
        raise SpecMismatchError("%s vs %s" % (A.spec, B.spec))


# ---------------------------------------------------------------------------
# maps and representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearMap:
    """Linear map given by the images of the source basis (rows)."""

    source: Algebra
    target: Algebra
    images: tuple

    def apply(self, coords):
        acc = [0] * self.target.dim
        for c, img in zip(coords, self.images):
            if c:
                for k, v in enumerate(img):
                    if v:
                        acc[k] += c * v
        return self.target.spec.reduce_vec(acc)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self.source:
            raise AlgebraMismatchError("map applied to an element of another algebra")
        return AlgebraElement(self.target, self.apply(x.coords))


def phi_embed(B: Algebra, t: int, ell: int) -> LinearMap:
    """b -> 1^{(x)ell} (x) b (x) 1^{(x)(t-ell)} into ``tensor_power(B, t+1)``."""
    if t < 0 or not 0 <= ell <= t:
        raise IndexError("embedding index %d outside [0, %d]" % (ell, t))
    target = tensor_power(B, t + 1)
    images = []
    for i in range(B.dim):
        v = (B.spec.one,)
        for pos in range(t + 1):
            v = kron(v, B.basis_coords(i) if pos == ell else B.unit)
        images.append(B.spec.reduce_vec(v))
    return LinearMap(B, target, tuple(images))


def regular_representation(x: AlgebraElement):
    """Matrix ``L`` with ``L @ coords(y) == coords(x * y)``."""
    A = x.algebra
    cols = [A.mul(x.coords, A.basis_coords(j)) for j in range(A.dim)]
    return [tuple(cols[j][k] for j in range(A.dim)) for k in range(A.dim)]


def commutativity_witness(A: Algebra):
    """A noncommuting basis pair ``(i, j)`` or ``None``.

    Pairs whose two products are both nonzero are reported first, since they
    make the clearer witness (``E12, E21`` rather than ``E11, E12`` in M_2).
    """
    fallback = None
    for i, j in itertools.combinations(range(A.dim), 2):
        ij, ji = A.table[i][j], A.table[j][i]
        if ij != ji:
            if any(ij) and any(ji):
                return (i, j)
            if fallback is None:
                fallback = (i, j)
    return fallback


def is_commutative(A: Algebra) -> bool:
    return commutativity_witness(A) is None


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    algebra: Algebra
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v):
        """Canonical remainder of ``v`` modulo the subspace."""
        spec = self.algebra.spec
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [spec.reduce(a - c * b) for a, b in zip(v, row)]
        return tuple(v)

    def __contains__(self, v):
        if isinstance(v, AlgebraElement):
            v = v.coords
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coordinates of ``v`` (assumed inside) in the echelon basis."""
        return tuple(v[pc] for pc in self.pivots)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return other.algebra is self.algebra and other.rows == self.rows

    def __hash__(self):
        return hash((id(self.algebra), self.rows))

    def elements(self):
        return [AlgebraElement(self.algebra, r) for r in self.rows]

    def __repr__(self):
        return "<Subspace dim=%d of %r>" % (self.dim, self.algebra)


def span(algebra: Algebra, rows) -> Subspace:
    rows = [r.coords if isinstance(r, AlgebraElement) else tuple(r) for r in rows]
    if not rows:
        return Subspace(algebra, (), ())
    basis, pivots = linalg.rref(rows, algebra.spec)
    return Subspace(algebra, tuple(basis), tuple(pivots))


def zero_subspace(algebra: Algebra) -> Subspace:
    return Subspace(algebra, (), ())


def whole(algebra: Algebra) -> Subspace:
    return span(algebra, [algebra.basis_coords(i) for i in range(algebra.dim)])


def _check_same(U, V):
    if U.algebra is not V.algebra:
        raise AlgebraMismatchError("subspaces of different algebras")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    return span(U.algebra, U.rows + V.rows)


def subspace_product(U: Subspace, V: Subspace) -> Subspace:
    """span{u * v} over basis pairs."""
    _check_same(U, V)
    A = U.algebra
    return span(A, [A.mul(u, v) for u in U.rows for v in V.rows])


def subspace_contains(U: Subspace, x) -> bool:
    return x in U


def subspace_equal(U: Subspace, V: Subspace) -> bool:
    return U == V


def subspace_intersection(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    A = U.algebra
    spec = A.spec
    if not U.rows or not V.rows:
        return zero_subspace(A)
    # x = sum a_i u_i = sum b_j v_j  <=>  [U; -V]^T (a, b) = 0
    cols = list(U.rows) + [A.neg(v) for v in V.rows]
    mat = [tuple(c[k] for c in cols) for k in range(A.dim)]
    kernel = linalg.nullspace(mat, len(cols), spec)
    out = []
    for sol in kernel:
        acc = [0] * A.dim
        for a, u in zip(sol[:U.dim], U.rows):
            for k, uk in enumerate(u):
                acc[k] += a * uk
        out.append(spec.reduce_vec(acc))
    return span(A, out)


def is_two_sided_ideal(I: Subspace) -> bool:
    A = I.algebra
    for r in I.rows:
        for k in range(A.dim):
            e = A.basis_coords(k)
            if A.mul(r, e) not in I or A.mul(e, r) not in I:
                return False
    return True


def is_subalgebra(U: Subspace) -> bool:
    A = U.algebra
    return all(A.mul(x, y) in U for x in U.rows for y in U.rows)


# ---------------------------------------------------------------------------
# matrices over an algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgMatrix:
    """Square matrix of algebra elements, stored as raw coordinate tuples."""

    algebra: Algebra
    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")
        D = self.algebra.dim
        if any(len(e) != D for row in self.entries for e in row):
            raise ValueError("entries must have %d coordinates" % D)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> AlgebraElement:
        i, j = ij
        return AlgebraElement(self.algebra, self.entries[i][j])

    def __eq__(self, other):
        if not isinstance(other, AlgMatrix):
            return NotImplemented
        return other.algebra is self.algebra and other.entries == self.entries

    def __hash__(self):
        return hash((id(self.algebra), self.entries))

    @classmethod
    def from_elements(cls, algebra: Algebra, rows) -> "AlgMatrix":
        out = []
        for row in rows:
            r = []
            for x in row:
                if isinstance(x, AlgebraElement):
                    if x.algebra is not algebra:
                        raise AlgebraMismatchError("entry from a different algebra")
                    r.append(x.coords)
                else:
                    r.append(algebra.spec.reduce_vec(x))
            out.append(tuple(r))
        return cls(algebra, tuple(out))

    @classmethod
    def identity(cls, algebra: Algebra, n: int) -> "AlgMatrix":
        z = algebra.zero_coords
        return cls(algebra, tuple(tuple(algebra.unit if i == j else z for j in range(n))
                                  for i in range(n)))

    @classmethod
    def random(cls, algebra: Algebra, n: int, rng: random.Random) -> "AlgMatrix":
        return cls(algebra, tuple(tuple(algebra.random_coords(rng) for _ in range(n))
                                  for _ in range(n)))

    def map_entries(self, fn, algebra=None) -> "AlgMatrix":
        target = algebra or self.algebra
        return AlgMatrix(target, tuple(tuple(fn(e) for e in row) for row in self.entries))

    def swap_rows(self, a: int, b: int) -> "AlgMatrix":
        rows = list(self.entries)
        rows[a], rows[b] = rows[b], rows[a]
        return AlgMatrix(self.algebra, tuple(rows))

    def matmul(self, other: "AlgMatrix") -> "AlgMatrix":
        A = self.algebra
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = A.zero_coords
                for k in range(n):
                    acc = A.add(acc, A.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return AlgMatrix(A, tuple(out))


def scalar_matrix(spec: FieldSpec, rows) -> AlgMatrix:
    """A matrix of scalars, viewed over the 1-dimensional field algebra."""
    F = field_algebra(spec)
    return AlgMatrix(F, tuple(tuple((spec.reduce(x.value if isinstance(x, FieldValue) else x),)
                                    for x in row) for row in rows))

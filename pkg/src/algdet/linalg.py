"""Dense exact linear algebra on raw scalars of a :class:`FieldSpec`.

Matrices are lists of rows; every function returns canonical raw values.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import AlgdetError
from .exactfield import FieldSpec


def rref(rows, spec: FieldSpec):
    """Reduced row-echelon form with leading coefficient 1.

    Returns ``(basis_rows, pivots)`` with zero rows dropped; pivots increase,
    so the result is the unique canonical basis of the row span.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = spec.inv_raw(m[r][c])
        m[r] = [spec.reduce(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [spec.reduce(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows, spec: FieldSpec) -> int:
    return len(rref(rows, spec)[0])


def nullspace(matrix, ncols: int, spec: FieldSpec):
    """Basis of ``{x : matrix @ x = 0}`` (column vectors, returned as tuples)."""
    basis, pivots = rref(matrix, spec) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        x = [spec.zero] * ncols
        x[fcol] = spec.one
        for row, pc in zip(basis, pivots):
            x[pc] = spec.reduce(-row[fcol])
        out.append(tuple(x))
    return out


def solve(matrix, rhs, ncols: int, spec: FieldSpec):
    """One solution of ``matrix @ x = rhs``; raises if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    basis, pivots = rref(aug, spec) if aug else ([], [])
    if pivots and pivots[-1] == ncols:
        raise AlgdetError("inconsistent linear system")
    x = [spec.zero] * ncols
    for row, pc in zip(basis, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def matmul(a, b, spec: FieldSpec):
    bt = list(zip(*b))
    return [tuple(spec.reduce(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a]


def identity(n: int, spec: FieldSpec):
    return [tuple(spec.one if i == j else spec.zero for j in range(n)) for i in range(n)]


def inverse(a, spec: FieldSpec):
    n = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(n, spec))]
    basis, pivots = rref(aug, spec)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [tuple(row[n:]) for row in basis]


def det(a, spec: FieldSpec):
    """Determinant of a square scalar matrix.

    GF(p): Gaussian elimination with modular inverses.  QQ: Bareiss
    fraction-free elimination, exact on Fractions.
    """
    n = len(a)
    if n == 0:
        return spec.one
    if spec.p is not None:
        return _det_mod(a, spec.p)
    return _det_bareiss([list(map(Fraction, row)) for row in a])


def _det_mod(a, p):
    m = [list(row) for row in a]
    n = len(m)
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        pc = m[c][c] % p
        result = result * pc % p
        inv = pow(pc, -1, p)
        row_c = m[c]
        for i in range(c + 1, n):
            f = m[i][c] % p
            if f:
                f = f * inv % p
                row_i = m[i]
                for j in range(c + 1, n):
                    row_i[j] = (row_i[j] - f * row_c[j]) % p
    return result % p


def _det_bareiss(m):
    n = len(m)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]

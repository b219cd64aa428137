"""Text formats for algebras and matrices (1-based indices throughout).

Algebra file::

    algebra
    field GF 7
    dim 3
    basis E11 E12 E22
    unit 1 0 1
    mul 1 1 1 0 0
    ...                      (one line per ordered basis pair)

or, after the ``field`` line, a single ``preset <kind> <args>`` line.
Inline presets ``preset:matrix:2`` avoid temporary files.

Matrix file: ``matrix <n>`` then ``entry <i> <j> <coords>`` lines; missing
entries are zero.
"""
from __future__ import annotations

import os

from .algebra import (Algebra, AlgMatrix, diagonal, direct_sum, matrix_algebra,
                      tensor_product, upper_triangular)
from .errors import ParseError
from .exactfield import FieldSpec, parse_field

PRESETS = ("upper_triangular", "matrix", "diagonal", "direct_sum", "tensor")


def _lines(text):
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if toks:
            yield no, toks


def _field_or(spec_line, given, no):
    spec = parse_field(spec_line)
    if given is not None and given != spec:
        raise ParseError("file declares %s but %s was requested" % (spec, given), no)
    return spec


def build_preset(kind: str, args, spec: FieldSpec, base_dir: str = ".") -> Algebra:
    if kind in ("upper_triangular", "matrix", "diagonal"):
        if len(args) != 1 or not str(args[0]).isdigit():
            raise ParseError("preset %s needs one integer size" % kind)
        d = int(args[0])
        return {"upper_triangular": upper_triangular, "matrix": matrix_algebra,
                "diagonal": diagonal}[kind](spec, d)
    if kind in ("direct_sum", "tensor"):
        if len(args) != 2:
            raise ParseError("preset %s needs two algebra files" % kind)
        parts = [load_algebra(os.path.join(base_dir, a), spec) for a in args]
        return (direct_sum if kind == "direct_sum" else tensor_product)(*parts)
    raise ParseError("unknown preset %r (choose from %s)" % (kind, ", ".join(PRESETS)))


def parse_algebra(text: str, spec: FieldSpec | None = None, base_dir: str = ".") -> Algebra:
    field = None
    dim = None
    labels = None
    unit = None
    table = {}
    saw_header = False
    for no, toks in _lines(text):
        head = toks[0]
        if head == "algebra":
            saw_header = True
            continue
        if not saw_header:
            raise ParseError("algebra file must start with 'algebra'", no)
        try:
            if head == "field":
                field = _field_or(toks[1:], spec, no)
            elif head == "preset":
                use = field or spec
                if use is None:
                    raise ParseError("no field given (add a 'field' line or pass --field)", no)
                return build_preset(toks[1], toks[2:], use, base_dir)
            elif head == "dim":
                dim = int(toks[1])
            elif head == "basis":
                labels = toks[1:]
            elif head == "unit":
                unit = tuple((field or spec).parse_raw(t) for t in toks[1:])
            elif head == "mul":
                i, j = int(toks[1]) - 1, int(toks[2]) - 1
                if (i, j) in table:
                    raise ParseError("duplicate product %d %d" % (i + 1, j + 1), no)
                table[(i, j)] = tuple((field or spec).parse_raw(t) for t in toks[3:])
            else:
                raise ParseError("unknown directive %r" % head, no)
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), no) from None
            raise
        except (ValueError, IndexError, AttributeError):
            raise ParseError("malformed %r line" % head, no) from None
    use = field or spec
    if use is None:
        raise ParseError("no field given")
    if dim is None or unit is None:
        raise ParseError("algebra needs 'dim' and 'unit' lines")
    missing = [(i + 1, j + 1) for i in range(dim) for j in range(dim) if (i, j) not in table]
    if missing:
        raise ParseError("missing mul lines, e.g. %d %d" % missing[0])
    rows = [[table[(i, j)] for j in range(dim)] for i in range(dim)]
    if any(len(v) != dim for r in rows for v in r) or len(unit) != dim:
        raise ParseError("coordinate vectors must have %d entries" % dim)
    return Algebra(use, rows, unit, labels)


def format_algebra(A: Algebra) -> str:
    spec = A.spec
    f = lambda v: " ".join(spec.format_raw(c) for c in v)
    lines = ["algebra", "field %s" % spec.header(), "dim %d" % A.dim,
             "basis " + " ".join(A.labels), "unit " + f(A.unit)]
    for i in range(A.dim):
        for j in range(A.dim):
            lines.append("mul %d %d %s" % (i + 1, j + 1, f(A.table[i][j])))
    return "\n".join(lines) + "\n"


def load_algebra(ref: str, spec: FieldSpec | None = None) -> Algebra:
    """A path, or inline ``preset:<kind>:<arg>[:<arg>]``."""
    if ref.startswith("preset:"):
        parts = ref.split(":")[1:]
        if spec is None:
            raise ParseError("inline presets need --field")
        return build_preset(parts[0], parts[1:], spec)
    with open(ref) as fh:
        text = fh.read()
    return parse_algebra(text, spec, os.path.dirname(ref) or ".")


def parse_matrix(text: str, A: Algebra) -> AlgMatrix:
    spec = A.spec
    n = None
    entries = None
    for no, toks in _lines(text):
        try:
            if toks[0] == "matrix":
                n = int(toks[1])
                entries = [[A.zero_coords] * n for _ in range(n)]
            elif toks[0] == "entry":
                if entries is None:
                    raise ParseError("'entry' before 'matrix <n>'", no)
                i, j = int(toks[1]) - 1, int(toks[2]) - 1
                if not (0 <= i < n and 0 <= j < n):
                    raise ParseError("entry index outside 1..%d" % n, no)
                coords = tuple(spec.parse_raw(t) for t in toks[3:])
                if len(coords) != A.dim:
                    raise ParseError("entry needs %d coordinates" % A.dim, no)
                entries[i][j] = coords
            else:
                raise ParseError("unknown directive %r" % toks[0], no)
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), no) from None
            raise
        except (ValueError, IndexError):
            raise ParseError("malformed %r line" % toks[0], no) from None
    if entries is None:
        raise ParseError("missing 'matrix <n>' line")
    return AlgMatrix(A, tuple(tuple(r) for r in entries))


def format_matrix(M: AlgMatrix) -> str:
    spec = M.algebra.spec
    lines = ["matrix %d" % M.n]
    for i, row in enumerate(M.entries):
        for j, e in enumerate(row):
            lines.append("entry %d %d %s" % (i + 1, j + 1, " ".join(spec.format_raw(c) for c in e)))
    return "\n".join(lines) + "\n"


def render_element(x) -> str:
    """Coordinates, plus a d x d grid when the algebra is M_d or U_d."""
    A = x.algebra
    spec = A.spec
    out = "[" + ", ".join(spec.format_raw(c) for c in x.coords) + "]"
    prov = A.provenance
    if prov.kind in ("matrix", "upper_triangular"):
        d = prov.d
        grid = [["0"] * d for _ in range(d)]
        for lbl, c in zip(A.labels, x.coords):
            body = lbl[1:]
            p, q = body.split("_") if "_" in body else (body[0], body[1:])
            grid[int(p) - 1][int(q) - 1] = spec.format_raw(c)
        width = max(len(s) for r in grid for s in r)
        out += "\n" + "\n".join("  ".join(s.rjust(width) for s in r) for r in grid)
    return out

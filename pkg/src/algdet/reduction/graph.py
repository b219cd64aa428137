"""Weighted digraphs with gadget annotations, and cycle-cover enumeration.

Edge weights are coordinate tuples of a *weight algebra*: ``M_2(F)`` (basis
E11, E12, E21, E22, i.e. the 2x2 matrix read row-major) in determinant mode,
or the field itself in permanent mode.  The adjacency matrix has
``M[u][v] = w(u, v)``, so cycle covers are exactly the nonzero terms of
det(M) and per(M).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .. import guards
from ..algebra import AlgMatrix, field_algebra, matrix_algebra
from ..errors import GadgetError, ParseError
from ..exactfield import FieldSpec, parse_field

MODES = ("det", "per")


@functools.lru_cache(maxsize=None)
def m2(spec: FieldSpec):
    """One shared M_2(F) instance per field, so graphs and matrices agree."""
    return matrix_algebra(spec, 2)


def weight_algebra(spec: FieldSpec, mode: str):
    if mode not in MODES:
        raise ValueError("mode must be 'det' or 'per', got %r" % (mode,))
    return m2(spec) if mode == "det" else field_algebra(spec)


@dataclass(frozen=True)
class ExternalEdge:
    gadget: str
    label: str          # "T1", "F2" on variable gadgets, "slot1".. on clause gadgets
    edge: tuple


@dataclass
class GadgetGraph:
    spec: FieldSpec
    mode: str
    n: int = 0
    edges: dict = field(default_factory=dict)        # (u, v) -> weight coords
    gadget_of: list = field(default_factory=list)    # gadget name per vertex
    externals: list = field(default_factory=list)    # ExternalEdge, not yet consumed
    markers: list = field(default_factory=list)      # (gadget, (u, v))
    middles: list = field(default_factory=list)      # (gadget, (u, v))
    xor_pairs: list = field(default_factory=list)    # (clause external, variable external, xor name)

    @property
    def algebra(self):
        return weight_algebra(self.spec, self.mode)

    # construction ---------------------------------------------------------

    def add_vertex(self, gadget: str) -> int:
        self.gadget_of.append(gadget)
        self.n += 1
        return self.n - 1

    def add_edge(self, u: int, v: int, weight) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GadgetError("edge (%d, %d) outside vertex range %d" % (u, v, self.n))
        if (u, v) in self.edges:
            raise GadgetError("parallel edge (%d, %d)" % (u, v))
        weight = self.spec.reduce_vec(weight)
        if len(weight) != self.algebra.dim:
            raise GadgetError("weight has %d coordinates, expected %d" % (len(weight), self.algebra.dim))
        if any(weight):
            self.edges[(u, v)] = weight

    def remove_edge(self, u: int, v: int):
        try:
            return self.edges.pop((u, v))
        except KeyError:
            raise GadgetError("no edge (%d, %d)" % (u, v)) from None

    def identity_weight(self):
        return self.algebra.unit

    def scalar_weight(self, c):
        return self.algebra.scale(self.spec.reduce(c), self.algebra.unit)

    def copy(self) -> "GadgetGraph":
        return GadgetGraph(self.spec, self.mode, self.n, dict(self.edges), list(self.gadget_of),
                           list(self.externals), list(self.markers), list(self.middles),
                           list(self.xor_pairs))

    def absorb(self, other: "GadgetGraph") -> int:
        """Append ``other`` as a disjoint block; returns its vertex offset."""
        if other.spec != self.spec or other.mode != self.mode:
            raise GadgetError("cannot combine graphs over different fields or modes")
        off = self.n
        self.n += other.n
        self.gadget_of.extend(other.gadget_of)
        sh = lambda e: (e[0] + off, e[1] + off)
        for e, w in other.edges.items():
            self.edges[sh(e)] = w
        self.externals.extend(ExternalEdge(x.gadget, x.label, sh(x.edge)) for x in other.externals)
        self.markers.extend((g, sh(e)) for g, e in other.markers)
        self.middles.extend((g, sh(e)) for g, e in other.middles)
        return off

    def vertices_of(self, gadget: str):
        return [v for v, g in enumerate(self.gadget_of) if g == gadget]

    def gadget_names(self):
        seen = []
        for g in self.gadget_of:
            if g not in seen:
                seen.append(g)
        return seen

    def induced(self, vertices) -> "GadgetGraph":
        """Subgraph on ``vertices`` (kept in increasing order, renumbered from 0)."""
        vertices = sorted(vertices)
        pos = {v: k for k, v in enumerate(vertices)}
        sub = GadgetGraph(self.spec, self.mode, len(vertices), {},
                          [self.gadget_of[v] for v in vertices])
        for (u, v), w in self.edges.items():
            if u in pos and v in pos:
                sub.edges[(pos[u], pos[v])] = w
        inside = lambda e: e[0] in pos and e[1] in pos
        move = lambda e: (pos[e[0]], pos[e[1]])
        sub.externals = [ExternalEdge(x.gadget, x.label, move(x.edge)) for x in self.externals if inside(x.edge)]
        sub.markers = [(g, move(e)) for g, e in self.markers if inside(e)]
        sub.middles = [(g, move(e)) for g, e in self.middles if inside(e)]
        return sub

    def to_matrix(self) -> AlgMatrix:
        A = self.algebra
        z = A.zero_coords
        rows = [[z] * self.n for _ in range(self.n)]
        for (u, v), w in self.edges.items():
            rows[u][v] = w
        return AlgMatrix(A, tuple(tuple(r) for r in rows))

    def external(self, gadget: str, label: str) -> ExternalEdge:
        for x in self.externals:
            if x.gadget == gadget and x.label == label:
                return x
        raise GadgetError("no unused external %s/%s" % (gadget, label))


# ---------------------------------------------------------------------------
# cycle covers
# ---------------------------------------------------------------------------

def cycle_count(succ) -> int:
    seen = [False] * len(succ)
    c = 0
    for s in range(len(succ)):
        if not seen[s]:
            c += 1
            j = s
            while not seen[j]:
                seen[j] = True
                j = succ[j]
    return c


@dataclass(frozen=True)
class CycleCover:
    succ: tuple
    cycles: int
    weight: tuple      # row-ordered product w(0, succ 0) w(1, succ 1) ...

    @property
    def n(self) -> int:
        return len(self.succ)

    @property
    def sign(self) -> int:
        return -1 if (self.n - self.cycles) % 2 else 1

    def uses(self, edge) -> bool:
        return self.succ[edge[0]] == edge[1]


def enumerate_cycle_covers(G: GadgetGraph, guard: int | None = None):
    """Yield every cycle cover of ``G`` in lexicographic order of successors."""
    guards.check("cycle_covers", G.n, guard, what="vertices")
    A = G.algebra
    n = G.n
    out = [sorted((v, w) for (u, v), w in G.edges.items() if u == i) for i in range(n)]
    succ = [0] * n

    def rec(i, used, prod):
        if i == n:
            t = tuple(succ)
            yield CycleCover(t, cycle_count(t), prod)
            return
        for v, w in out[i]:
            if used >> v & 1:
                continue
            succ[i] = v
            yield from rec(i + 1, used | (1 << v), A.mul(prod, w))

    yield from rec(0, 0, A.unit)


def signed_weight(G: GadgetGraph, C: CycleCover):
    A = G.algebra
    return C.weight if C.sign > 0 else A.neg(C.weight)


def cover_sum(G: GadgetGraph, covers=None):
    """sum_C sgn(C) w(C) = det of the adjacency matrix."""
    A = G.algebra
    acc = A.zero_coords
    for C in (covers if covers is not None else enumerate_cycle_covers(G)):
        acc = A.add(acc, signed_weight(G, C))
    return acc


# ---------------------------------------------------------------------------
# graph file format
# ---------------------------------------------------------------------------

def format_graph(G: GadgetGraph) -> str:
    """``graph <n> <mode> <field>`` then annotations and sorted edges (1-based)."""
    spec = G.spec
    lines = ["graph %d %s %s" % (G.n, G.mode, spec.header())]
    start = 0
    while start < G.n:
        end = start
        while end + 1 < G.n and G.gadget_of[end + 1] == G.gadget_of[start]:
            end += 1
        lines.append("# gadget %s %d-%d" % (G.gadget_of[start], start + 1, end + 1))
        start = end + 1
    for x in G.externals:
        lines.append("# external %s %s %d %d" % (x.gadget, x.label, x.edge[0] + 1, x.edge[1] + 1))
    for g, e in G.markers:
        lines.append("# marker %s %d %d" % (g, e[0] + 1, e[1] + 1))
    for g, e in G.middles:
        lines.append("# middle %s %d %d" % (g, e[0] + 1, e[1] + 1))
    for cl, var, name in G.xor_pairs:
        lines.append("# xor %s %s/%s %d %d %s/%s %d %d" % (
            name, cl.gadget, cl.label, cl.edge[0] + 1, cl.edge[1] + 1,
            var.gadget, var.label, var.edge[0] + 1, var.edge[1] + 1))
    for (u, v) in sorted(G.edges):
        w = G.edges[(u, v)]
        lines.append("edge %d %d %s" % (u + 1, v + 1, " ".join(spec.format_raw(c) for c in w)))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> GadgetGraph:
    lines = text.splitlines()
    G = None
    for no, raw in enumerate(lines, 1):
        toks = raw.split()
        if not toks:
            continue
        if G is None:
            if toks[0] != "graph" or len(toks) < 3:
                raise ParseError("expected 'graph <n> <mode> [field]'", no)
            spec = parse_field(toks[3:]) if len(toks) > 3 else parse_field("QQ")
            if toks[2] not in MODES:
                raise ParseError("mode must be det or per", no)
            G = GadgetGraph(spec, toks[2])
            G.gadget_of = ["?"] * int(toks[1])
            G.n = int(toks[1])
            continue
        try:
            if toks[0] == "#":
                _parse_annotation(G, toks[1:])
            elif toks[0] == "edge":
                u, v = int(toks[1]) - 1, int(toks[2]) - 1
                w = tuple(G.spec.parse_raw(t) for t in toks[3:])
                G.add_edge(u, v, w)
            else:
                raise ParseError("unknown directive %r" % toks[0])
        except ParseError as exc:
            raise ParseError(str(exc), no) from None
        except (ValueError, IndexError, GadgetError) as exc:
            raise ParseError(str(exc) or "malformed line", no) from None
    if G is None:
        raise ParseError("empty graph file")
    return G


def _parse_annotation(G, toks):
    if not toks:
        return
    kind = toks[0]
    e = lambda a, b: (int(a) - 1, int(b) - 1)
    if kind == "gadget":
        lo, hi = toks[2].split("-")
        for v in range(int(lo) - 1, int(hi)):
            G.gadget_of[v] = toks[1]
    elif kind == "external":
        G.externals.append(ExternalEdge(toks[1], toks[2], e(toks[3], toks[4])))
    elif kind == "marker":
        G.markers.append((toks[1], e(toks[2], toks[3])))
    elif kind == "middle":
        G.middles.append((toks[1], e(toks[2], toks[3])))
    elif kind == "xor":
        cg, cl = toks[2].split("/")
        vg, vl = toks[5].split("/")
        G.xor_pairs.append((ExternalEdge(cg, cl, e(toks[3], toks[4])),
                            ExternalEdge(vg, vl, e(toks[6], toks[7])), toks[1]))
    # any other comment is free text

"""Variable, clause and XOR gadgets, each with an exhaustive contract check."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import GadgetError
from ..exactfield import FieldSpec
from .graph import ExternalEdge, GadgetGraph, cycle_count, enumerate_cycle_covers, signed_weight


# ---------------------------------------------------------------------------
# variable gadget
# ---------------------------------------------------------------------------

def _even_at_least(k: int) -> int:
    a = max(k, 0)
    return a + (a % 2)


def variable_gadget_sizes(t: int, f: int):
    """(a, b): internal vertices on the True / False paths."""
    a = _even_at_least(t - 1)
    b = _even_at_least(f - 1)
    if a == b == 0:
        b = 2      # otherwise both paths would be the single edge s -> s'
    return a, b


def build_variable_gadget(t: int, f: int, spec: FieldSpec, mode: str = "det",
                          name: str = "var") -> GadgetGraph:
    """Two paths s -> s' (True side u_1..u_a, False side v_1..v_b) plus s' -> s.

    Every internal vertex has a self-loop, so a cover either runs the long
    cycle through the True path (False internals on their loops) or the
    reverse.  Externals are the first t True-path and first f False-path edges.
    """
    if t < 0 or f < 0 or t + f < 1:
        raise GadgetError("variable gadget needs t + f >= 1 occurrences")
    a, b = variable_gadget_sizes(t, f)
    G = GadgetGraph(spec, mode)
    s = G.add_vertex(name)
    s2 = G.add_vertex(name)
    us = [G.add_vertex(name) for _ in range(a)]
    vs = [G.add_vertex(name) for _ in range(b)]
    one = G.identity_weight()
    for side, internals, count in (("T", us, t), ("F", vs, f)):
        path = [s] + internals + [s2]
        for k, (x, y) in enumerate(zip(path, path[1:])):
            G.add_edge(x, y, one)
            if k < count:
                G.externals.append(ExternalEdge(name, "%s%d" % (side, k + 1), (x, y)))
        for x in internals:
            G.add_edge(x, x, one)
    G.add_edge(s2, s, one)
    G.middles.append((name, (s2, s)))
    return G


@dataclass(frozen=True)
class VariableGadgetCheck:
    t: int
    f: int
    a: int
    b: int
    covers: int
    cycle_counts: tuple
    structure_ok: bool
    externals_ok: bool

    @property
    def passed(self) -> bool:
        return (self.covers == 2 and self.structure_ok and self.externals_ok
                and self.a % 2 == 0 and self.b % 2 == 0
                and all(c % 2 == 1 for c in self.cycle_counts))


def verify_variable_gadget(t: int, f: int, spec: FieldSpec = None, mode: str = "det") -> VariableGadgetCheck:
    from ..exactfield import GF
    spec = spec or GF(7)
    G = build_variable_gadget(t, f, spec, mode)
    a, b = variable_gadget_sizes(t, f)
    covers = list(enumerate_cycle_covers(G))
    s, s2 = 0, 1
    us = list(range(2, 2 + a))
    vs = list(range(2 + a, 2 + a + b))
    true_path = [(x, y) for x, y in zip([s] + us, us + [s2])]
    false_path = [(x, y) for x, y in zip([s] + vs, vs + [s2])]
    expected = []
    for path, loops in ((true_path, vs), (false_path, us)):
        succ = [None] * G.n
        for x, y in path + [(s2, s)]:
            succ[x] = y
        for x in loops:
            succ[x] = x
        expected.append(tuple(succ))
    got = sorted(C.succ for C in covers)
    structure_ok = got == sorted(expected)
    ext_T = [x.edge for x in G.externals if x.label.startswith("T")]
    ext_F = [x.edge for x in G.externals if x.label.startswith("F")]
    externals_ok = (len(ext_T) == t and len(ext_F) == f and len(set(ext_T)) == t
                    and len(set(ext_F)) == f and set(ext_T) <= set(true_path)
                    and set(ext_F) <= set(false_path))
    return VariableGadgetCheck(t, f, a, b, len(covers), tuple(sorted(C.cycles for C in covers)),
                               structure_ok, externals_ok)


# ---------------------------------------------------------------------------
# clause gadget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClauseGadgetShape:
    """Topology only: vertex count, edges, the three externals and the marker."""

    n: int
    edges: tuple
    externals: tuple
    marker: tuple


# Produced by synthesize_clause_gadget(5): the first digraph in the search order
# (vertex count, edge count, edge bitmask) meeting the contract.  No 4-vertex
# digraph does, so 5 vertices is the minimum.
CLAUSE_GADGET = ClauseGadgetShape(
    n=5,
    edges=((0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (1, 2), (1, 3), (2, 1), (2, 3),
           (2, 4), (3, 0), (3, 4), (4, 0), (4, 1)),
    externals=((0, 2), (2, 3), (3, 0)),
    marker=(0, 3),
)


def build_clause_gadget(spec: FieldSpec, mode: str = "det", name: str = "clause",
                        shape: ClauseGadgetShape = CLAUSE_GADGET) -> GadgetGraph:
    """Marker weight -I_2 in determinant mode and +1 in permanent mode."""
    G = GadgetGraph(spec, mode)
    for _ in range(shape.n):
        G.add_vertex(name)
    one = G.identity_weight()
    for e in shape.edges:
        w = G.scalar_weight(-1) if (mode == "det" and e == shape.marker) else one
        G.add_edge(e[0], e[1], w)
    for k, e in enumerate(shape.externals):
        G.externals.append(ExternalEdge(name, "slot%d" % (k + 1), e))
    G.markers.append((name, shape.marker))
    return G


@dataclass(frozen=True)
class ClauseGadgetCheck:
    covers: int
    p1: bool            # no cover uses all three externals
    p2: bool            # each proper subset used by exactly one cover, of weight 1
    p3: bool            # 1 or 2 cycles per cover; marker exactly in the 2-cycle ones
    signed_weights: tuple   # sgn(C) w(C) per cover in determinant mode

    @property
    def shared_signed_weight(self) -> bool:
        return len(set(self.signed_weights)) == 1

    @property
    def passed(self) -> bool:
        return self.p1 and self.p2 and self.p3 and self.shared_signed_weight


def verify_clause_gadget(spec: FieldSpec = None, shape: ClauseGadgetShape = CLAUSE_GADGET) -> ClauseGadgetCheck:
    from ..exactfield import GF
    spec = spec or GF(7)
    unweighted = build_clause_gadget(spec, "per", shape=shape)
    covers = list(enumerate_cycle_covers(unweighted))
    used = [tuple(C.uses(e) for e in shape.externals) for C in covers]
    p1 = (True, True, True) not in used
    proper = [u for u in itertools.product((False, True), repeat=3) if u != (True, True, True)]
    one = unweighted.algebra.unit
    p2 = (sorted(used) == sorted(proper) and len(used) == 7
          and all(C.weight == one for C in covers))
    p3 = all(C.cycles in (1, 2) and C.uses(shape.marker) == (C.cycles == 2) for C in covers)
    weighted = build_clause_gadget(spec, "det", shape=shape)
    signed = tuple(signed_weight(weighted, C) for C in enumerate_cycle_covers(weighted))
    return ClauseGadgetCheck(len(covers), p1, p2, p3, signed)


def synthesize_clause_gadget(budget: int = 5) -> ClauseGadgetShape:
    """Deterministic smallest-first search for a gadget meeting the contract.

    Digraphs (self-loops allowed) are ordered by vertex count, then edge
    count, then the edge bitmask with bit ``i*k + j`` for edge (i, j).  A
    numpy pass keeps the digraphs with exactly seven cycle covers, each of
    one or two cycles; the survivors are tried in order for externals and a
    marker edge, both chosen in bit order.
    """
    import numpy as np

    for k in range(1, budget + 1):
        nbits = k * k
        perms = list(itertools.permutations(range(k)))
        pmask = np.array([sum(1 << (i * k + p[i]) for i in range(k)) for p in perms], dtype=np.int64)
        good = np.array([cycle_count(p) in (1, 2) for p in perms])
        cands = []
        chunk = 1 << min(nbits, 21)
        for start in range(0, 1 << nbits, chunk):
            E = np.arange(start, start + chunk, dtype=np.int64)
            n_good = np.zeros(chunk, dtype=np.int16)
            n_bad = np.zeros(chunk, dtype=np.int16)
            for pm, g in zip(pmask, good):
                hit = (E & pm) == pm
                if g:
                    n_good += hit
                else:
                    n_bad += hit
            cands.extend(E[(n_good == 7) & (n_bad == 0)].tolist())
        cands.sort(key=lambda E: (bin(E).count("1"), E))
        for E in cands:
            edges = tuple((b // k, b % k) for b in range(nbits) if E >> b & 1)
            found = _place_externals(k, edges, perms, pmask)
            if found is not None:
                return found
    raise GadgetError("no clause gadget with at most %d vertices" % budget)


def _place_externals(k, edges, perms, pmask):
    E = sum(1 << (i * k + j) for i, j in edges)
    covers = [p for p, m in zip(perms, pmask) if E & int(m) == int(m)]
    proper = sorted(u for u in itertools.product((False, True), repeat=3) if u != (True,) * 3)
    non_loops = [e for e in edges if e[0] != e[1]]
    for ext in itertools.combinations(non_loops, 3):
        used = sorted(tuple(p[u] == v for u, v in ext) for p in covers)
        if used != proper:
            continue
        for mk in edges:
            if mk in ext:
                continue
            if all((p[mk[0]] == mk[1]) == (cycle_count(p) == 2) for p in covers):
                shape = ClauseGadgetShape(k, edges, ext, mk)
                return shape
    return None


# ---------------------------------------------------------------------------
# XOR gadget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XorConstants:
    """2x2 matrices as row-major 4-tuples of raw scalars, and the block matrix."""

    spec: FieldSpec
    X: tuple
    Y: tuple
    Z: tuple
    I2: tuple
    J2: tuple
    M: tuple           # 4x4 blocks over vertices (a, b, c, d)


def xor_constants(spec: FieldSpec) -> XorConstants:
    r = spec.reduce_vec
    X = r((1, 0, 0, -1))
    Y = r((0, -1, -1, 0))
    Z = r((0, -1, 1, 0))
    I2 = r((1, 0, 0, 1))
    J2 = r((0, 1, 1, 0))
    O = r((0, 0, 0, 0))
    sc = lambda c, W: r(tuple(c * x for x in W))
    M = ((O, sc(-1, X), sc(-1, Y), Z),
         (O, X, sc(2, Y), Z),
         (O, sc(3, X), O, Z),
         (I2, X, Y, sc(-1, Z)))
    return XorConstants(spec, X, Y, Z, I2, J2, M)


def xor_block(spec: FieldSpec, mode: str):
    """The 4x4 XOR adjacency as weight coordinates for the given mode."""
    C = xor_constants(spec)
    if mode == "det":
        return C.M
    # scalar mode: X = Y = Z = I read as 1, keeping the signs and the 2 and 3
    scal = ((0, -1, -1, 1), (0, 1, 2, 1), (0, 3, 0, 1), (1, 1, 1, -1))
    return tuple(tuple((spec.reduce(x),) for x in row) for row in scal)


def xor_matrix(spec: FieldSpec, mode: str = "det"):
    from ..algebra import AlgMatrix
    from .graph import weight_algebra
    return AlgMatrix(weight_algebra(spec, mode), xor_block(spec, mode))


def minor(M, rows, cols):
    """Delete the given 0-based rows and columns."""
    from ..algebra import AlgMatrix
    keep_r = [i for i in range(M.n) if i not in rows]
    keep_c = [j for j in range(M.n) if j not in cols]
    return AlgMatrix(M.algebra, tuple(tuple(M.entries[i][j] for j in keep_c) for i in keep_r))


def xor_minor_identities(spec: FieldSpec):
    """Each XOR minor determinant next to its expected value.

    Returns ``{name: (computed coords, expected coords)}`` for
    det(M_{3,1}) = -4 I, det(M_{1,3}) = -4 J, and the four vanishing ones;
    M_{i,j} deletes row i and column j (1-based, vertices a, b, c, d).
    """
    from ..determinant import det_cayley_bruteforce
    C = xor_constants(spec)
    M = xor_matrix(spec)
    A = M.algebra
    zero = A.zero_coords
    cases = {
        "M_3,1": (minor(M, [2], [0]), A.scale(spec.reduce(-4), C.I2)),
        "M_1,3": (minor(M, [0], [2]), A.scale(spec.reduce(-4), C.J2)),
        "M": (M, zero),
        "M_1,1": (minor(M, [0], [0]), zero),
        "M_3,3": (minor(M, [2], [2]), zero),
        "M_13,13": (minor(M, [0, 2], [0, 2]), zero),
    }
    return {k: (det_cayley_bruteforce(m).coords, exp) for k, (m, exp) in cases.items()}


def apply_xor_replacement(G: GadgetGraph, e_u, e_v, name: str | None = None) -> GadgetGraph:
    """Replace edges (u, u') and (v, v') by an XOR gadget on new vertices a, b, c, d.

    Connection edges (u, a), (c, u'), (v, c), (a, v') all carry identity
    weight; the new vertices are numbered after every existing vertex.
    """
    e_u, e_v = _edge(e_u), _edge(e_v)
    (u, u2), (v, v2) = e_u, e_v
    if len({u, u2, v, v2}) != 4:
        raise GadgetError("XOR replacement needs four distinct endpoints, got %s and %s" % (e_u, e_v))
    one = G.identity_weight()
    for e in (e_u, e_v):
        if e not in G.edges:
            raise GadgetError("edge %s is not in the graph" % (e,))
        if G.edges[e] != one:
            raise GadgetError("edge %s does not carry identity weight" % (e,))
    H = G.copy()
    H.remove_edge(*e_u)
    H.remove_edge(*e_v)
    name = name or "xor%d" % (len(H.xor_pairs) + 1)
    a, b, c, d = (H.add_vertex(name) for _ in range(4))
    block = xor_block(G.spec, G.mode)
    quad = (a, b, c, d)
    for i in range(4):
        for j in range(4):
            if any(block[i][j]):
                H.add_edge(quad[i], quad[j], block[i][j])
    for x, y in ((u, a), (c, u2), (v, c), (a, v2)):
        H.add_edge(x, y, one)
    ext_u = _take_external(H, e_u)
    ext_v = _take_external(H, e_v)
    H.xor_pairs.append((ext_u, ext_v, name))
    return H


def _edge(e):
    return e.edge if isinstance(e, ExternalEdge) else tuple(e)


def _take_external(H, edge):
    for k, x in enumerate(H.externals):
        if x.edge == edge:
            return H.externals.pop(k)
    return ExternalEdge(H.gadget_of[edge[0]], "edge", edge)


@dataclass(frozen=True)
class XorTotals:
    """Signed cover-weight totals of G' grouped by which connection edges are used."""

    u_side: tuple
    u_expected: tuple
    v_side: tuple
    v_expected: tuple
    leftover: tuple

    @property
    def passed(self) -> bool:
        return (self.u_side == self.u_expected and self.v_side == self.v_expected
                and not any(self.leftover))


def xor_replacement_totals(G: GadgetGraph, e_u, e_v) -> XorTotals:
    """Compare covers of G' = G with an XOR on (e_u, e_v) against covers of G.

    Expected: covers of G' using (u,a),(c,u') but not (v,c),(a,v') total
    4 * [sum over covers of G with e_u, without e_v]; those using (v,c),(a,v')
    but not the u-side total 4 * [sum with e_v, without e_u] * J; the rest
    cancel.  J multiplies on the right because the XOR rows come last.
    """
    e_u, e_v = _edge(e_u), _edge(e_v)
    H = apply_xor_replacement(G, e_u, e_v)
    A = G.algebra
    (u, u2), (v, v2) = e_u, e_v
    a, c = H.n - 4, H.n - 2
    u_edges = ((u, a), (c, u2))
    v_edges = ((v, c), (a, v2))
    only_u = only_v = A.zero_coords
    # permanent mode counts covers without signs
    term = signed_weight if G.mode == "det" else (lambda _, C: C.weight)
    for C in enumerate_cycle_covers(G):
        sw = term(G, C)
        if C.uses(e_u) and not C.uses(e_v):
            only_u = A.add(only_u, sw)
        elif C.uses(e_v) and not C.uses(e_u):
            only_v = A.add(only_v, sw)
    tot_u = tot_v = rest = A.zero_coords
    for C in enumerate_cycle_covers(H):
        sw = term(H, C)
        uu = all(C.uses(e) for e in u_edges) and not any(C.uses(e) for e in v_edges)
        vv = all(C.uses(e) for e in v_edges) and not any(C.uses(e) for e in u_edges)
        if uu:
            tot_u = A.add(tot_u, sw)
        elif vv:
            tot_v = A.add(tot_v, sw)
        else:
            rest = A.add(rest, sw)
    four = G.spec.reduce(4)
    J = xor_constants(G.spec).J2 if G.mode == "det" else A.unit
    return XorTotals(tot_u, A.scale(four, only_u), tot_v, A.mul(A.scale(four, only_v), J), rest)


def random_host_graph(spec: FieldSpec, rng, n: int | None = None, density: float = 0.5,
                      mode: str = "det"):
    """Random digraph on 4..5 vertices with two identity-weight marked disjoint edges.

    Returns ``(G, e_u, e_v)``.  Other weights are uniformly random matrices
    (or scalars), self-loops included.
    """
    from ..algebra import random_scalar
    n = n or rng.choice((4, 5))
    G = GadgetGraph(spec, mode)
    for _ in range(n):
        G.add_vertex("host")
    verts = list(range(n))
    rng.shuffle(verts)
    e_u, e_v = (verts[0], verts[1]), (verts[2], verts[3])
    one = G.identity_weight()
    for x in range(n):
        for y in range(n):
            if (x, y) in (e_u, e_v):
                G.add_edge(x, y, one)
            elif rng.random() < density:
                G.add_edge(x, y, tuple(random_scalar(spec, rng) for _ in range(G.algebra.dim)))
    return G, e_u, e_v

"""Formula -> graph compilation and the end-to-end counting checks.

``build_h0`` is the disjoint union of the gadgets; ``build_h`` joins every
clause slot to a variable-gadget external through an XOR gadget, giving a
graph over M_2(F) whose determinant is ``a I + b J`` with
``a + b = 4^(3m) * #SAT``.  ``build_valiant_scalar`` is the same topology with
scalar weights, whose permanent is ``4^(3m) * #SAT``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import guards
from ..errors import GadgetError, PreconditionError
from ..exactfield import FieldSpec
from .cnf import CnfFormula, count_sat_bruteforce
from .gadgets import (CLAUSE_GADGET, apply_xor_replacement, build_clause_gadget,
                      build_variable_gadget)
from .graph import GadgetGraph, enumerate_cycle_covers, signed_weight


def _check_field(spec: FieldSpec, mode: str):
    if spec.p == 2:
        raise PreconditionError("the reduction needs odd characteristic or QQ (signs vanish mod 2)")


def variable_name(v: int) -> str:
    return "var%d" % v


def clause_name(j: int) -> str:
    return "clause%d" % (j + 1)


def occurrence_counts(phi: CnfFormula, var: int):
    return len(phi.occurrences(var, True)), len(phi.occurrences(var, False))


def used_variables(phi: CnfFormula):
    return sorted({v for cl in phi.clauses for v, _ in cl})


def global_sign(G: GadgetGraph, n_var_gadgets: int, m: int) -> int:
    """Common value z of sgn(C) w(C) over consistent covers of H0, as +-1.

    sgn = (-1)^(N - c); each variable gadget cover has an odd cycle count and
    each clause cover contributes -1 once its marker weight is folded in.
    """
    return -1 if (G.n + n_var_gadgets + m) % 2 else 1


def build_h0(phi: CnfFormula, spec: FieldSpec, mode: str = "det", normalize: bool = True) -> GadgetGraph:
    """Variable gadgets (by variable index), then clause gadgets (input order).

    With ``normalize`` a pass-through vertex is appended on the middle edge of
    the first variable gadget whenever that makes the common signed weight of
    consistent covers +I instead of -I.
    """
    _check_field(spec, mode)
    G = GadgetGraph(spec, mode)
    vars_ = used_variables(phi)
    for v in vars_:
        t, f = occurrence_counts(phi, v)
        G.absorb(build_variable_gadget(t, f, spec, mode, variable_name(v)))
    for j in range(phi.m):
        G.absorb(build_clause_gadget(spec, mode, clause_name(j)))
    if normalize and global_sign(G, len(vars_), phi.m) < 0:
        insert_parity_vertex(G)
    return G


def insert_parity_vertex(G: GadgetGraph) -> int:
    """Subdivide the first middle edge s' -> s by a vertex without self-loop.

    The new vertex lies on the always-used middle edge, so every cover keeps
    its cycle structure while the vertex count changes parity.
    """
    if not G.middles:
        raise GadgetError("graph has no variable middle edge to subdivide")
    g, (s2, s) = G.middles[0]
    w = G.remove_edge(s2, s)
    p = G.add_vertex("parity")
    G.add_edge(s2, p, w)
    G.add_edge(p, s, G.identity_weight())
    G.middles[0] = (g, (s2, p))
    G.middles.insert(1, ("parity", (p, s)))
    return p


def xor_pairing(phi: CnfFormula, G: GadgetGraph):
    """(clause external, variable external) per clause slot, lowest index first.

    A positive literal pairs with a True-side external of its variable, a
    negative one with a False-side external.
    """
    next_free = {}
    pairs = []
    for j, cl in enumerate(phi.clauses):
        for k, (v, pol) in enumerate(cl):
            side = "T" if pol else "F"
            key = (v, side)
            next_free[key] = next_free.get(key, 0) + 1
            var_ext = G.external(variable_name(v), "%s%d" % (side, next_free[key]))
            cl_ext = G.external(clause_name(j), "slot%d" % (k + 1))
            pairs.append((cl_ext, var_ext))
    return pairs


def build_h(phi: CnfFormula, spec: FieldSpec, mode: str = "det") -> GadgetGraph:
    G = build_h0(phi, spec, mode)
    for cl_ext, var_ext in xor_pairing(phi, G):
        G = apply_xor_replacement(G, cl_ext, var_ext)
    if G.externals:
        raise GadgetError("unconsumed externals: %s" % G.externals)
    return G


def build_valiant_scalar(phi: CnfFormula, spec: FieldSpec = None) -> GadgetGraph:
    from ..exactfield import QQ
    return build_h(phi, spec or QQ, "per")


# ---------------------------------------------------------------------------
# H0: blockwise evaluation
# ---------------------------------------------------------------------------

def blocks(G: GadgetGraph):
    """Vertex sets of the weakly connected components, ordered by least vertex."""
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        parent[find(u)] = find(v)
    comp = {}
    for x in range(G.n):
        comp.setdefault(find(x), []).append(x)
    return sorted(comp.values())


def blockwise_det(G: GadgetGraph, guard: int | None = None):
    """det of a graph whose edge weights all commute, as a product over blocks.

    Signs (-1)^(n - c) multiply over disjoint blocks, and commuting weights let
    the row-ordered product regroup block by block.
    """
    _require_scalar_weights(G)
    A = G.algebra
    total = A.unit
    for verts in blocks(G):
        sub = G.induced(verts)
        acc = A.zero_coords
        for C in enumerate_cycle_covers(sub, guard):
            acc = A.add(acc, signed_weight(sub, C))
        total = A.mul(total, acc)
    return total


def _require_scalar_weights(G):
    A = G.algebra
    for w in G.edges.values():
        if G.mode == "det" and not (w[1] == w[2] == 0 and w[0] == w[3]):
            raise PreconditionError("blockwise evaluation needs scalar-multiple-of-identity weights")


def consistent_cover_sum(phi: CnfFormula, G: GadgetGraph):
    """sum of sgn(C) w(C) over covers of H0 that encode an assignment.

    A cover is consistent when each clause gadget uses exactly the externals of
    its false literals; per-gadget covers are enumerated once and combined
    assignment by assignment.
    """
    A = G.algebra
    vars_ = used_variables(phi)
    per_block = {}
    for verts in blocks(G):
        sub = G.induced(verts)
        names = {sub.gadget_of[0]} | set(sub.gadget_of)
        per_block[frozenset(names)] = (sub, list(enumerate_cycle_covers(sub)))
    total = A.zero_coords
    for values in itertools.product((False, True), repeat=len(vars_)):
        assign = dict(zip(vars_, values))
        weight = A.unit
        n_total = 0
        c_total = 0
        ok = True
        for names, (sub, covers) in per_block.items():
            chosen = [C for C in covers if _consistent(sub, C, phi, assign)]
            if len(chosen) != 1:
                ok = False
                break
            C = chosen[0]
            weight = A.mul(weight, C.weight)
            n_total += C.n
            c_total += C.cycles
        if ok:
            sw = weight if (n_total - c_total) % 2 == 0 else A.neg(weight)
            total = A.add(total, sw)
    return total


def _consistent(sub, C, phi, assign):
    for x in sub.externals:
        used = C.uses(x.edge)
        if x.gadget.startswith("var"):
            v = int(x.gadget[3:])
            # True-side edges are on the long cycle exactly when v is True
            if used != (assign[v] == x.label.startswith("T")):
                return False
        else:
            j = int(x.gadget[6:]) - 1
            k = int(x.label[4:]) - 1
            v, pol = phi.clauses[j][k]
            literal_false = assign[v] != pol
            if used != literal_false:
                return False
    for g, e in sub.middles:
        if not C.uses(e):
            return False
    return True


# ---------------------------------------------------------------------------
# end-to-end verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionReport:
    formula: str
    field: str
    vertices: int
    a: object
    b: object
    S: int
    target: object
    in_span: bool
    stray: tuple | None
    passed: bool

    def summary(self) -> str:
        lines = ["formula: %s" % self.formula,
                 "field: %s, H has %d vertices" % (self.field, self.vertices)]
        if not self.in_span:
            lines.append("det(H) is not of the form aI + bJ: %s" % (self.stray,))
        lines.append("a = %s, b = %s, a + b = %s" % (self.a, self.b, self.a + self.b if self.in_span else "-"))
        lines.append("S = %d, target 4^(3m) S = %s" % (self.S, self.target))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def split_i_j(spec: FieldSpec, coords):
    """(a, b, in_span) for coords of a 2x2 matrix; in span{I, J} iff [[a, b], [b, a]]."""
    e11, e12, e21, e22 = coords
    ok = e11 == e22 and e12 == e21
    return spec(e11), spec(e12), ok


def verify_reduction(phi: CnfFormula, spec: FieldSpec, guard: int | None = None,
                     det_fn=None) -> ReductionReport:
    """det(H) by the expansion oracle, compared with 4^(3m) * #SAT in the field."""
    from ..determinant import det_cayley_expansion
    _check_field(spec, "det")
    H = build_h(phi, spec)
    guards.check("expansion", H.n, guard, what="vertices of H")
    S = count_sat_bruteforce(phi)
    det = (det_fn or (lambda M: det_cayley_expansion(M, guard=guard)))(H.to_matrix())
    a, b, in_span = split_i_j(spec, det.coords)
    target = spec(4 ** (3 * phi.m) * S)
    stray = None if in_span else tuple(spec.format_raw(c) for c in det.coords)
    passed = in_span and (a + b).value == target.value
    return ReductionReport(str(phi), str(spec), H.n, a, b, S, target, in_span, stray, passed)


def verify_scalar_reduction(phi: CnfFormula, spec: FieldSpec = None, guard: int | None = None):
    """(per(G_phi), 4^(3m) S) using the Ryser oracle."""
    from ..determinant import per_ryser
    G = build_valiant_scalar(phi, spec)
    per = per_ryser(G.to_matrix(), guard=guard)
    S = count_sat_bruteforce(phi)
    return per, G.spec(4 ** (3 * phi.m) * S), G.n

"""3-CNF formulas: DIMACS parsing and brute-force model counting."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import guards
from ..errors import ParseError


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are triples of (variable, polarity) with 1-based variables."""

    n_vars: int
    clauses: tuple

    def __post_init__(self):
        if not self.clauses:
            raise ValueError("a formula needs at least one clause")
        for cl in self.clauses:
            if len(cl) != 3:
                raise ValueError("clauses must have exactly three literals")
            for var, _ in cl:
                if not 1 <= var <= self.n_vars:
                    raise ValueError("variable %d undeclared" % var)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrences(self, var: int, positive: bool):
        """Ordered (clause index, slot) sites where the literal appears."""
        return [(j, k) for j, cl in enumerate(self.clauses)
                for k, (v, pol) in enumerate(cl) if v == var and pol == positive]

    def satisfied_by(self, assignment) -> bool:
        """``assignment[v-1]`` is the truth value of variable v."""
        return all(any(assignment[v - 1] == pol for v, pol in cl) for cl in self.clauses)

    def __str__(self):
        lit = lambda v, pol: ("x%d" % v) if pol else ("~x%d" % v)
        return " & ".join("(" + " | ".join(lit(*l) for l in cl) + ")" for cl in self.clauses)


def formula(n_vars: int, *clauses) -> CnfFormula:
    """Build from signed DIMACS-style literals, e.g. ``formula(2, (1, -2, -2))``."""
    return CnfFormula(n_vars, tuple(tuple((abs(l), l > 0) for l in cl) for cl in clauses))


def parse_dimacs(text: str) -> CnfFormula:
    n_vars = n_clauses = None
    clauses = []
    current = []
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0] in ("c", "%"):
            continue
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] != "cnf" or not toks[2].isdigit() or not toks[3].isdigit():
                raise ParseError("malformed header, expected 'p cnf <vars> <clauses>'", no)
            n_vars, n_clauses = int(toks[2]), int(toks[3])
            continue
        if n_vars is None:
            raise ParseError("clause before 'p cnf' header", no)
        for t in toks:
            try:
                lit = int(t)
            except ValueError:
                raise ParseError("bad literal %r" % t, no) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", no)
                if len(current) > 3:
                    raise ParseError("clause has %d literals; only 3-CNF is supported" % len(current), no)
                while len(current) < 3:
                    current.append(current[-1])   # repeating a literal keeps the model count
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > n_vars:
                    raise ParseError("variable %d undeclared (header has %d)" % (abs(lit), n_vars), no)
                current.append((abs(lit), lit > 0))
    if n_vars is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != n_clauses:
        raise ParseError("header declares %d clauses, found %d" % (n_clauses, len(clauses)))
    if not clauses:
        raise ParseError("formula has no clauses")
    return CnfFormula(n_vars, tuple(clauses))


def format_dimacs(phi: CnfFormula) -> str:
    lines = ["p cnf %d %d" % (phi.n_vars, phi.m)]
    for cl in phi.clauses:
        lines.append(" ".join(str(v if pol else -v) for v, pol in cl) + " 0")
    return "\n".join(lines) + "\n"


def count_sat_bruteforce(phi: CnfFormula, guard: int | None = None) -> int:
    guards.check("sat", phi.n_vars, guard, what="variables")
    return sum(1 for a in itertools.product((False, True), repeat=phi.n_vars) if phi.satisfied_by(a))

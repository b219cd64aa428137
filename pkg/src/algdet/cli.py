"""``algdet`` command line.

Exit status: 0 on success, 1 when a verification fails, 2 on usage, parse or
size-guard errors.
"""
from __future__ import annotations

import argparse
import dataclasses
import random
import sys
from dataclasses import dataclass

from . import guards
from .errors import AlgdetError
from .exactfield import GF, QQ, parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    field: object = None
    inputs: dict = dataclasses.field(default_factory=dict)
    algorithm: str = "auto"
    guard_overrides: dict = dataclasses.field(default_factory=dict)
    out: str | None = None
    seed: int = 0
    options: dict = dataclasses.field(default_factory=dict)


def _read(path):
    with open(path) as fh:
        return fh.read()


def _write_out(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_det(cfg: RunConfig) -> int:
    from .determinant import ALGORITHMS, det_auto
    from .formats import load_algebra, parse_matrix, render_element
    from .structure import parse_structure_override, wm_decompose

    A = load_algebra(cfg.inputs["algebra"], cfg.field)
    M = parse_matrix(_read(cfg.inputs["matrix"]), A)
    override = None
    if cfg.inputs.get("structure"):
        override = parse_structure_override(_read(cfg.inputs["structure"]), A)
    if cfg.algorithm == "auto":
        res = det_auto(M, force_oracle=cfg.options.get("force_oracle", False), override=override)
        print(res.report.summary())
        if res.value is None:
            print("no value computed (pass --force-oracle to run the exponential oracle)")
            return EXIT_OK
        value, algo = res.value, res.algorithm
    else:
        fn = ALGORITHMS[cfg.algorithm]
        if cfg.algorithm == "general":
            value = fn(M, wm_decompose(A, override))
        else:
            value = fn(M)
        algo = cfg.algorithm
    print("algorithm: %s" % algo)
    print("det = " + render_element(value))
    _write_out(cfg, " ".join(A.spec.format_raw(c) for c in value.coords) + "\n")
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    from .formats import load_algebra
    from .structure import classify, parse_structure_override

    A = load_algebra(cfg.inputs["algebra"], cfg.field)
    override = None
    if cfg.inputs.get("structure"):
        override = parse_structure_override(_read(cfg.inputs["structure"]), A)
    report = classify(A, override)
    print(report.summary())
    _write_out(cfg, report.summary() + "\n")
    return EXIT_OK


def cmd_reduce(cfg: RunConfig) -> int:
    from .reduction.cnf import parse_dimacs
    from .reduction.compile import build_h
    from .reduction.graph import format_graph

    phi = parse_dimacs(_read(cfg.inputs["cnf"]))
    G = build_h(phi, cfg.field, cfg.options.get("mode", "det"))
    text = format_graph(G)
    if cfg.out:
        _write_out(cfg, text)
        print("wrote %d-vertex %s graph for %s to %s" % (G.n, G.mode, phi, cfg.out))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify_reduction(cfg: RunConfig) -> int:
    from .reduction.cnf import parse_dimacs
    from .reduction.compile import verify_reduction, verify_scalar_reduction

    phi = parse_dimacs(_read(cfg.inputs["cnf"]))
    if cfg.options.get("mode", "det") == "per":
        per, target, n = verify_scalar_reduction(phi, cfg.field)
        ok = per == target
        text = "formula: %s\nG has %d vertices\nper = %s, target 4^(3m) S = %s\n%s" % (
            phi, n, per, target, "PASS" if ok else "FAIL")
    else:
        report = verify_reduction(phi, cfg.field)
        ok = report.passed
        text = report.summary()
    print(text)
    _write_out(cfg, text + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gadget(cfg: RunConfig) -> int:
    from .reduction import gadgets

    which = cfg.options["check"]
    ok = True
    if which == "xor":
        specs = [cfg.field] if cfg.field else [QQ, GF(3), GF(5), GF(7), GF(101)]
        for spec in specs:
            res = gadgets.xor_minor_identities(spec)
            for name, (got, want) in res.items():
                good = got == want
                ok &= good
                print("%-8s %-8s det = [%s]  %s" % (spec, name, ", ".join(spec.format_raw(c) for c in got),
                                                  "ok" if good else "MISMATCH"))
        rng = random.Random(cfg.seed)
        trials = cfg.options.get("trials", 20)
        spec = cfg.field or GF(7)
        passed = sum(gadgets.xor_replacement_totals(*gadgets.random_host_graph(spec, rng)).passed
                     for _ in range(trials))
        ok &= passed == trials
        print("replacement totals: %d/%d random host graphs over %s" % (passed, trials, spec))
    elif which == "clause":
        shape = gadgets.CLAUSE_GADGET
        if cfg.options.get("synthesize"):
            shape = gadgets.synthesize_clause_gadget(cfg.options.get("budget", 5))
            same = shape == gadgets.CLAUSE_GADGET
            print("synthesized %d-vertex gadget, %s the shipped constant" % (shape.n, "matches" if same else "differs from"))
            ok &= same
        res = gadgets.verify_clause_gadget(cfg.field or GF(7), shape)
        print("vertices %d, edges %d, externals %s, marker %s" % (
            shape.n, len(shape.edges), shape.externals, shape.marker))
        print("covers %d  P1 %s  P2 %s  P3 %s  shared signed weight %s" % (
            res.covers, res.p1, res.p2, res.p3, res.shared_signed_weight))
        ok &= res.passed
    else:
        for t in range(5):
            for f in range(5):
                if t + f == 0:
                    continue
                r = gadgets.verify_variable_gadget(t, f, cfg.field or GF(7))
                print("t=%d f=%d a=%d b=%d covers=%d cycles=%s %s" % (
                    t, f, r.a, r.b, r.covers, r.cycle_counts, "ok" if r.passed else "FAIL"))
                ok &= r.passed
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bench(cfg: RunConfig) -> int:
    from .bench import DEFAULT_GRID, records_to_csv, run_bench

    records, mismatches = run_bench(cfg.field or GF(7), cfg.options.get("grid") or DEFAULT_GRID, cfg.seed)
    text = records_to_csv(records)
    if cfg.out:
        _write_out(cfg, text)
    sys.stdout.write(text)
    verified = sum(1 for r in records if r.verified_by)
    print("# %d rows, %d checked against an oracle, %d mismatches" % (len(records), verified, len(mismatches)),
          file=sys.stderr)
    return EXIT_FAIL if mismatches else EXIT_OK


COMMANDS = {
    "det": cmd_det,
    "classify": cmd_classify,
    "reduce": cmd_reduce,
    "verify-reduction": cmd_verify_reduction,
    "gadget": cmd_gadget,
    "bench": cmd_bench,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="algdet", description="Exact determinants over finite-dimensional algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", nargs="+", metavar="F", help="GF <p>, <p> or QQ")
    common.add_argument("--out", help="write the machine-readable result here")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--guard", action="append", default=[], metavar="NAME=N",
                        help="raise a size guard, e.g. expansion=26")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("det", parents=[common], help="determinant of a matrix over an algebra")
    d.add_argument("--algebra", required=True)
    d.add_argument("--matrix", required=True)
    d.add_argument("--algorithm", default="auto",
                   choices=["auto", "bruteforce", "expansion", "commutative", "upper", "general"])
    d.add_argument("--structure-file")
    d.add_argument("--force-oracle", action="store_true")

    c = sub.add_parser("classify", parents=[common], help="easy/hard verdict for an algebra")
    c.add_argument("--algebra", required=True)
    c.add_argument("--structure-file")

    r = sub.add_parser("reduce", parents=[common], help="compile a 3-CNF formula to a graph")
    r.add_argument("--cnf", required=True)
    r.add_argument("--mode", choices=["det", "per"], default="det")

    v = sub.add_parser("verify-reduction", parents=[common], help="check det(H) = aI + bJ, a + b = 4^(3m) #SAT")
    v.add_argument("--cnf", required=True)
    v.add_argument("--mode", choices=["det", "per"], default="det")

    g = sub.add_parser("gadget", parents=[common], help="exhaustive gadget contract checks")
    g.add_argument("--check", required=True, choices=["xor", "clause", "variable"])
    g.add_argument("--synthesize", action="store_true")
    g.add_argument("--budget", type=int, default=5)
    g.add_argument("--trials", type=int, default=20)

    b = sub.add_parser("bench", parents=[common], help="timing grid with oracle-checked checksums")
    b.add_argument("--grid", help="e.g. 'U2:5,10,20,40;U3:4,8,16' (U upper, D diagonal, S sum)")
    return p


def config_from_args(ns) -> RunConfig:
    spec = parse_field(ns.field) if ns.field else None
    inputs = {k: getattr(ns, k) for k in ("algebra", "matrix", "cnf") if getattr(ns, k, None)}
    if getattr(ns, "structure_file", None):
        inputs["structure"] = ns.structure_file
    overrides = {}
    for item in ns.guard:
        overrides.update(guards.parse_overrides(item))
    options = {k: getattr(ns, k) for k in ("mode", "check", "synthesize", "budget", "trials",
                                           "grid", "force_oracle") if hasattr(ns, k)}
    return RunConfig(ns.command, spec, inputs, getattr(ns, "algorithm", "auto"), overrides,
                     ns.out, ns.seed, options)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if cfg.command in ("reduce", "verify-reduction") and cfg.field is None:
            parser.error("--field is required for %s" % cfg.command)
        with guards.override(**cfg.guard_overrides):
            return COMMANDS[cfg.command](cfg)
    except (AlgdetError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

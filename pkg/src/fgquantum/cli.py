"""fgq: build and check quantum Fock-Goncharov matrices from the command line.

    fgq quiver --n 3
    fgq build --n 4 --matrix left --quantum --format latex
    fgq check --n 3 --which left,right
    fgq factorize --n 4 --side left --emit json
    fgq classical verify --n 4 --prop all --trials 100 --seed 0
    fgq classical invariants --n 3 --seed 1

Exit status is 0 when every requested check passes, 1 on a check failure
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .flags import edge_invariant, is_max_span_quad, random_flag, random_triple, triangle_invariant
from .ncmatrix import (
    NcMatrix,
    commutative_left,
    commutative_right,
    fg_assignments,
    m_edge,
    quantum_left,
    quantum_right,
)
from .qtorus import HalfOmegaLaurent, QuantumTorus, TorusElement
from .slnq import check_mnq, check_slnq
from .snake_quantum import (
    build_embedding,
    check_lemma_commutation,
    snake_move_matrix,
    solve_snake_move_poissons,
    verify_factorization,
)
from .snakes_classical import PROPS, verify_prop
from .triangle_quiver import fg_poisson, fg_torus, interior_vertices

SCHEMA = "fgq/1"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int
    subcommand: str
    seed: int = 0
    trials: int = 1
    format: str = "text"
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# rendering


def _frac(num: int, den: int) -> str:
    f = Fraction(num, den)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


_NAME = re.compile(r"^([A-Za-z]+)('*)(\d+)(?:\^\((\d+)\))?$")


def latex_name(name: str) -> str:
    m = _NAME.match(name)
    if not m:
        return name
    letters, primes, idx, factor = m.groups()
    base = f"{letters}{primes}_{{{idx}}}"
    return base if factor is None else f"{{{base}}}^{{({factor})}}"


def _latex_coeff(c: HalfOmegaLaurent) -> str:
    parts = []
    for k, v in sorted(c.terms.items()):
        w = "" if k == 0 else f"\\omega^{{{_frac(k, 2)}}}"
        if v == 1 and w:
            parts.append(w)
        elif v == -1 and w:
            parts.append("-" + w)
        else:
            parts.append(f"{Fraction(v)}{w}")
    return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"


def latex_entry(u: TorusElement) -> str:
    """Sum of Weyl-ordered monomials [ ... ] with omega-power coefficients."""
    if u.is_zero():
        return "0"
    t = u.torus
    out = []
    for e, c in sorted(u.weyl_terms().items()):
        mono = " ".join(
            latex_name(nm) + ("" if x == t.n else f"^{{{_frac(x, t.n)}}}")
            for nm, x in zip(t.names, e) if x
        ) or "1"
        coeff = _latex_coeff(c)
        out.append(f"[{mono}]" if coeff == "1" else f"{coeff}[{mono}]")
    return " + ".join(out).replace("+ -", "- ")


def latex_matrix(m: NcMatrix) -> str:
    rows = [" & ".join(latex_entry(x) for x in r) for r in m.rows]
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}"


def matrix_json(m: NcMatrix):
    if isinstance(m.algebra, QuantumTorus):
        return [[x.to_json() for x in r] for r in m.rows]
    return [[repr(x) for x in r] for r in m.rows]


def matrix_text(m: NcMatrix) -> str:
    return "\n".join(f"[{i},{j}] {x!r}" for i, r in enumerate(m.rows, 1) for j, x in enumerate(r, 1))


# ---------------------------------------------------------------------------
# subcommands


def _matrix(n: int, which: str, quantum: bool, normalized: bool) -> NcMatrix:
    if which == "edge":
        ring, _, z, _, _ = fg_assignments(n)
        m = m_edge(ring, z, None, normalized)
        return m.weyl(fg_torus(n)) if quantum else m
    if quantum:
        return (quantum_left if which == "left" else quantum_right)(n, normalized)
    return (commutative_left if which == "left" else commutative_right)(n, normalized)


def cmd_quiver(cfg: RunConfig) -> tuple[int, object]:
    spec = fg_poisson(cfg.n)
    if cfg.format == "json":
        return 0, spec.to_json()
    names = spec.generator_names
    width = max(len(s) for s in names) + 1
    lines = [" " * width + "".join(f"{s:>{width}}" for s in names)]
    for a in names:
        lines.append(f"{a:>{width}}" + "".join(f"{spec.P(a, b):>{width}}" for b in names))
    return 0, "\n".join(lines)


def cmd_build(cfg: RunConfig) -> tuple[int, object]:
    o = cfg.options
    m = _matrix(cfg.n, o["matrix"], o["quantum"], o["normalized"])
    if cfg.format == "json":
        return 0, {"matrix": o["matrix"], "quantum": o["quantum"], "normalized": o["normalized"],
                   "entries": matrix_json(m)}
    if cfg.format == "latex":
        if not o["quantum"]:
            raise UsageError("latex output is only available with --quantum")
        return 0, latex_matrix(m)
    return 0, matrix_text(m)


def cmd_check(cfg: RunConfig) -> tuple[int, object]:
    o = cfg.options
    results = {}
    ok = True
    for which in o["which"]:
        m = _matrix(cfg.n, which, True, o["normalized"])
        rep = check_slnq(m) if o["normalized"] else check_mnq(m)
        results[which] = rep.to_json()
        ok &= rep.passed
    if cfg.format == "json":
        return (0 if ok else 1), {"n": cfg.n, "results": results}
    lines = []
    for which, r in results.items():
        lines.append(f"{which}: {'PASS' if r['passed'] else 'FAIL'} ({len(r['failures'])} failures)")
        for f in r["failures"][:10]:
            lines.append(f"  {f['relation']} rows={f['rows']} cols={f['cols']}")
    return (0 if ok else 1), "\n".join(lines)


def cmd_factorize(cfg: RunConfig) -> tuple[int, object]:
    side = cfg.options["side"]
    sol = solve_snake_move_poissons(cfg.n, side)
    spec = build_embedding(cfg.n, side)
    rep = verify_factorization(cfg.n, side)
    slnq = {j: check_slnq(snake_move_matrix(t)).passed for j, t in sol.tori.items()}
    lemma = check_lemma_commutation(cfg.n, side)
    ok = rep.equal and all(slnq.values()) and spec.hom.is_valid() and lemma.passed
    if cfg.format == "json":
        return (0 if ok else 1), {
            "n": cfg.n,
            "side": side,
            "poisson": {str(j): {"names": list(t.torus.names), "matrix": [list(r) for r in t.torus.poisson]}
                        for j, t in sol.tori.items()},
            "free_parameters": sol.free_parameters,
            "move_indices": spec.js,
            "embedding": spec.image_table(),
            "snake_move_slnq": {str(j): v for j, v in slnq.items()},
            "lemma_commutation": lemma.passed,
            "factorization": rep.to_json(),
            "lhs": matrix_json(rep.lhs),
            "rhs": matrix_json(rep.rhs),
        }
    lines = [f"move indices: {spec.js}"]
    for name, cells in spec.image_table().items():
        lines.append(f"{name:>5} -> " + " (x) ".join(cells))
    lines.append(f"snake-move matrices in SL_n^q: {all(slnq.values())}")
    lines.append(f"embedding is a homomorphism: {spec.hom.is_valid()}")
    lines.append(f"factorization: {'PASS' if rep.equal else 'FAIL at ' + str(rep.first_mismatch)}")
    return (0 if ok else 1), "\n".join(lines)


def cmd_classical(cfg: RunConfig) -> tuple[int, object]:
    o = cfg.options
    if o["action"] == "invariants":
        rng = random.Random(cfg.seed)
        E, F, G = random_triple(cfg.n, rng)
        while True:
            F2 = random_flag(cfg.n, rng)
            if is_max_span_quad(E, F, G, F2):
                break
        tri = {",".join(map(str, v)): str(triangle_invariant(E, F, G, *v)) for v in interior_vertices(cfg.n)}
        edge = {str(j): str(edge_invariant(E, G, F, F2, j)) for j in range(1, cfg.n)}
        out = {"flags": {k: f.to_json() for k, f in zip("EFG", (E, F, G))}, "F'": F2.to_json(),
               "triangle": tri, "edge": edge}
        if cfg.format == "json":
            return 0, out
        return 0, "\n".join([f"X{k} = {v}" for k, v in tri.items()] + [f"Z{k} = {v}" for k, v in edge.items()])
    props = PROPS if o["prop"] == ["all"] else o["prop"]
    results = [verify_prop(cfg.n, p, cfg.trials, cfg.seed) for p in props]
    ok = all(r["passed"] or r["cases"] == 0 for r in results) and any(r["cases"] for r in results)
    if cfg.format == "json":
        return (0 if ok else 1), {"results": results}
    lines = [f"{r['prop']:>8}: {'PASS' if r['passed'] else ('SKIP' if not r['cases'] else 'FAIL')}"
             f" ({r['cases']} cases, {len(r['failures'])} failures)" for r in results]
    return (0 if ok else 1), "\n".join(lines)


COMMANDS = {
    "quiver": cmd_quiver,
    "build": cmd_build,
    "check": cmd_check,
    "factorize": cmd_factorize,
    "classical": cmd_classical,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a configuration; returns (exit status, rendered output)."""
    status, payload = COMMANDS[cfg.subcommand](cfg)
    if cfg.format == "json":
        payload = {"schema": SCHEMA, "command": cfg.subcommand, "n": cfg.n,
                   "passed": status == 0, **(payload if isinstance(payload, dict) else {"result": payload})}
        return status, json.dumps(payload, indent=2, sort_keys=True)
    return status, str(payload)


# ---------------------------------------------------------------------------
# argument parsing


def _n(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    if n < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return n


def _positive(value: str) -> int:
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def _sides(value: str) -> list[str]:
    out = [s.strip() for s in value.split(",") if s.strip()]
    if not out or any(s not in ("left", "right") for s in out):
        raise argparse.ArgumentTypeError("expected a comma list of left,right")
    return out


def _props(value: str) -> list[str]:
    out = [s.strip() for s in value.split(",") if s.strip()]
    if out != ["all"] and any(p not in PROPS for p in out):
        raise argparse.ArgumentTypeError(f"expected 'all' or a comma list of {','.join(PROPS)}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fgq", description="Quantum Fock-Goncharov matrices and snakes.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--n", type=_n, required=True)
        sp.add_argument("--format", choices=formats, default="text")

    sp = sub.add_parser("quiver", help="print the Poisson matrix of the FG quiver")
    common(sp)

    sp = sub.add_parser("build", help="build the left or right matrix")
    common(sp, ("text", "json", "latex"))
    sp.add_argument("--matrix", choices=("left", "right", "edge"), default="left")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--quantum", dest="quantum", action="store_true", default=True)
    g.add_argument("--classical", dest="quantum", action="store_false")
    sp.add_argument("--no-normalize", dest="normalized", action="store_false")

    sp = sub.add_parser("check", help="check membership in SL_n^q")
    common(sp)
    sp.add_argument("--which", type=_sides, default=["left", "right"])
    sp.add_argument("--no-normalize", dest="normalized", action="store_false",
                    help="drop the determinant normalizers and only check M_n^q")

    sp = sub.add_parser("factorize", help="snake-move factorization of the left/right matrix")
    sp.add_argument("--n", type=_n, required=True)
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("--emit", "--format", dest="format", choices=("text", "json"), default="text")

    sp = sub.add_parser("classical", help="classical flag and snake checks")
    csub = sp.add_subparsers(dest="action", required=True)
    for name in ("verify", "invariants"):
        cp = csub.add_parser(name)
        common(cp)
        cp.add_argument("--seed", type=int, default=0)
        if name == "verify":
            cp.add_argument("--prop", type=_props, default=["all"])
            cp.add_argument("--trials", type=_positive, default=10)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"n", "subcommand", "seed", "trials", "format"}
    opts = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(n=args.n, subcommand=args.subcommand, seed=getattr(args, "seed", 0),
                     trials=getattr(args, "trials", 1), format=args.format, options=opts)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, out = run(config_from_args(args))
    except UsageError as e:
        parser.error(str(e))
    sys.stdout.write(out + "\n")
    return status


if __name__ == "__main__":
    raise SystemExit(main())

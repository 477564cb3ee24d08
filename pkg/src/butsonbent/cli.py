"""Command-line front end.

Exit codes: 0 on success (including "no solutions"), 2 on bad input,
3 when a budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import autgroup, bent_search, butson, constructions, existence, metrics
from .cyclotomic import units
from .exceptions import BudgetExceeded, ButsonError

EXIT_OK, EXIT_BAD_INPUT, EXIT_BUDGET = 0, 2, 3


class BadInput(Exception):
    pass


def num(value) -> dict:
    """JSON number with an exactness flag."""
    if isinstance(value, (int, np.integer)):
        return {"value": int(value), "exact": True}
    return {"value": float(value), "exact": False}


def load_matrix(name: str) -> butson.ButsonMatrix:
    """A path, or the name of a bundled matrix such as ``f3.bh``."""
    p = Path(name)
    if p.exists():
        return butson.load(p)
    bundled = resources.files("butsonbent") / "matrices" / p.name
    if bundled.is_file():
        return butson.parse(bundled.read_text(encoding="utf-8"))
    raise BadInput(f"no such matrix file: {name}")


def _check_k(k: int, q: int) -> int:
    if math.gcd(k, q) != 1:
        raise BadInput(f"k = {k} is not coprime to q = {q}")
    return k % q


def _lam_text(lam) -> str:
    return repr(lam)[repr(lam).index(":") + 2:-1]


# --- subcommands ------------------------------------------------------------
# each returns (json-able dict, text)

def cmd_verify(args):
    H = load_matrix(args.file)
    ok = butson.verify_butson(H)
    sigma = butson.is_regular(H) if ok else None
    data = {"n": H.n, "q": H.q, "butson": ok,
            "regular": sigma is not None,
            "row_sum": None if sigma is None else list(sigma.coeffs)}
    text = f"BH({H.n},{H.q}) {'OK' if ok else 'FAILED'}"
    if sigma is not None:
        text += f", regular with row sum {_lam_text(sigma)}"
    return data, text


def cmd_search(args):
    H = load_matrix(args.file)
    k = _check_k(args.k, H.q)
    sols = bent_search.search(H, k, args.method, args.budget, threads=args.threads)
    data = {"n": H.n, "q": H.q, "k": k, "method": args.method,
            "solutions": [s.to_json() for s in sols], "count": num(len(sols))}
    lines = [f"{len(sols)} solutions (n={H.n}, q={H.q}, k={k}, {args.method})"]
    lines += [f"x = {' '.join(map(str, s.x))}  lambda = {_lam_text(s.lam)}" for s in sols]
    return data, "\n".join(lines)


def cmd_census(args):
    H = load_matrix(args.file)
    ks = [_check_k(args.k, H.q)] if args.k is not None else units(H.q)
    rows = [bent_search.census(H, k, args.method, budget=args.budget) for k in ks]
    data = {"n": H.n, "q": H.q, "method": args.method, "census": [c.to_json() for c in rows]}
    text = "\n".join(f"k={c.k}: {c.text()}" for c in rows)
    return data, text


def cmd_construct(args):
    kind = args.kind
    if kind == "fourier":
        H = butson.fourier_matrix(args.q, args.r)
        return _matrix_out(H, {})
    if kind == "group-invariant":
        H = butson.group_invariant_matrix(args.q, args.m)
        return _matrix_out(H, {})
    if kind == "kronecker":
        if len(args.files) != 2:
            raise BadInput("kronecker needs two matrix files")
        H = butson.kronecker(load_matrix(args.files[0]), load_matrix(args.files[1]))
        return _matrix_out(H, {})
    # mm
    if args.spec:
        spec = constructions.MMSpec.from_json(Path(args.spec).read_text(encoding="utf-8"))
    else:
        spec = constructions.MMSpec.dilation(args.q, args.m, args.d, args.variant, args.k)
    H, x = constructions.mm_sequence(spec)
    cond = constructions.check_mm_condition(spec)
    lam = bent_search.verify_bent(H, x, spec.k)
    extra = {"spec": json.loads(spec.to_json()), "x": list(x), "condition": cond,
             "bent": lam is not None, "lambda": None if lam is None else list(lam.coeffs)}
    data, text = _matrix_out(H, extra)
    text += f"\nx = {' '.join(map(str, x))}\ncondition {'holds' if cond else 'fails'}; "
    text += f"lambda = {_lam_text(lam)}" if lam is not None else "not self-dual bent"
    return data, text


def _matrix_out(H, extra):
    data = {"n": H.n, "q": H.q, "log": H.L.tolist(), "butson": butson.verify_butson(H)}
    data.update(extra)
    return data, butson.serialize(H).rstrip("\n")


def cmd_exclude(args):
    row = existence.exclusion_row(args.n, args.q, args.budget or existence.DEFAULT_BUDGET)
    return row.to_json(), row.text()


def cmd_covradius(args):
    H = load_matrix(args.file)
    C = butson.build_code(H, full=True)
    r = metrics.covering_radius(C, threads=args.threads, budget=args.budget or metrics.COVERING_BUDGET)
    data = {"n": H.n, "q": H.q, "covering_radius": num(r),
            "method": "sweep with x_0 = 0" if C.is_translation_closed() else "full sweep"}
    return data, f"{r}" if isinstance(r, int) else f"{r:.10f}"


def cmd_spectrum(args):
    H = load_matrix(args.file)
    vals = sorted(metrics.distance_spectrum(H))
    data = {"n": H.n, "q": H.q, "spectrum": [num(v) for v in vals]}
    return data, " ".join(str(v) if isinstance(v, int) else f"{v:.6f}" for v in vals)


def cmd_design_strength(args):
    H = load_matrix(args.file)
    S = metrics.spherical_embed(butson.build_code(H, full=True))
    t = metrics.design_strength(S)
    anti = metrics.is_antipodal(S)
    b = metrics.sphere_covering_bound(S)
    data = {"n": H.n, "q": H.q, "points": len(S), "strength": t, "antipodal": anti,
            "min_sq_distance": num(S.min_sq_distance()),
            "bound": None if b is None else {**num(b.value), "hypothesis": b.hypothesis}}
    text = f"{len(S)} points, strength {t}, antipodal {'yes' if anti else 'no'}"
    text += f", covering bound {b.value:.6f} ({b.hypothesis})" if b else ", no covering bound"
    return data, text


def _bound_text(label, v, n, q):
    if v is None:
        return f"{label} n/a"
    s = f"{label} {v:.3f}" if abs(v - round(v)) > 1e-9 else f"{label} {round(v)}"
    att = metrics.attainable_at_least(v, n, q)
    if att is not None and abs(att - v) > 1e-9:
        s += f" (attainable: {att})"
    return s


def cmd_bounds(args):
    b = metrics.covering_bounds(args.n, args.q, args.dephased, args.bent)
    data = {"n": args.n, "q": args.q}
    for key, v in (("lower", b.lower), ("upper", b.upper)):
        if v is None:
            data[key] = None
            continue
        exact = abs(v - round(v)) < 1e-12
        data[key] = {"value": int(round(v)) if exact else v, "exact": exact,
                     "attainable": metrics.attainable_at_least(v, args.n, args.q)}
    text = ", ".join([_bound_text("lower", b.lower, args.n, args.q),
                      _bound_text("upper", b.upper, args.n, args.q)])
    return data, text


def cmd_autgraph(args):
    H = load_matrix(args.file)
    k = None
    if args.mode == "strong":
        k = _check_k(args.k if args.k is not None else 1, H.q)
    G = autgroup.build_digraph(H, k)
    if args.format == "dot":
        return None, G.to_dot().rstrip("\n")
    if args.format == "dimacs":
        return None, G.to_dimacs().rstrip("\n")
    res = autgroup.digraph_automorphisms(G, budget=args.budget or autgroup.VERTEX_BUDGET)
    gens = []
    for f in res.generators:
        dec = autgroup.decode_digraph_perm(G, f, H)
        pair = dec if k is None else (dec.apply_multiplier(k), dec)
        gens.append({"P": {"perm": list(pair[0].perm), "diag": list(pair[0].diag)},
                     "Q": {"perm": list(pair[1].perm), "diag": list(pair[1].diag)}})
    data = {"n": H.n, "q": H.q, "mode": args.mode, "k": k, "vertices": G.num_vertices,
            "arcs": G.num_arcs, "order": num(res.order), "generators": gens}
    text = f"{G.num_vertices} vertices, {G.num_arcs} arcs, group order {res.order}, {len(gens)} generators"
    return data, text


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads")
    common.add_argument("--budget", type=int, default=None, help="cap on enumerated candidates")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized helpers")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(
        prog="butsonbent",
        description="Self-dual bent sequences and codes of Butson Hadamard matrices.",
        epilog="Polynomial-system (Groebner) solving is not provided; "
               "`search --method eigen` is the linear-algebra route.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common, fmt], help="check H H* = n I exactly")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common, fmt], help="find self-dual bent sequences")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=1, help="multiplier index")
    s.add_argument("--method", choices=("exhaustive", "eigen"), default="exhaustive")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("census", parents=[common, fmt], help="solutions per lambda")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=None, help="single multiplier (default: all units)")
    s.add_argument("--method", choices=("exhaustive", "eigen"), default="exhaustive")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("construct", parents=[common, fmt], help="build matrices and sequences")
    s.add_argument("kind", choices=("fourier", "group-invariant", "kronecker", "mm"))
    s.add_argument("files", nargs="*", help="two matrix files for kronecker")
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--r", type=int, default=1, help="rank for fourier")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--d", type=int, default=1, help="dilation phi(x) = d x for mm")
    s.add_argument("--variant", choices=("plain", "shifted"), default="plain")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--spec", default=None, help="MMSpec JSON file for mm")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("exclude", parents=[common, fmt], help="arithmetic exclusion of (n, q)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_exclude)

    s = sub.add_parser("covradius", parents=[common, fmt], help="Chinese-Euclidean covering radius of C_H")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=None, help="accepted for symmetry; unused")
    s.set_defaults(func=cmd_covradius)

    s = sub.add_parser("spectrum", parents=[common, fmt], help="pairwise distances of C_H")
    s.add_argument("file")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("design-strength", parents=[common, fmt], help="spherical design strength")
    s.add_argument("file")
    s.set_defaults(func=cmd_design_strength)

    s = sub.add_parser("bounds", parents=[common, fmt], help="covering radius bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--dephased", action="store_true")
    s.add_argument("--bent", action="store_true", help="a bent sequence is known to exist")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("autgraph", parents=[common], help="digraph automorphisms or export")
    s.add_argument("file")
    s.add_argument("--mode", choices=("plain", "strong"), default="plain")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--format", choices=("text", "json", "dot", "dimacs"), default="text")
    s.set_defaults(func=cmd_autgraph)
    return p


def run(argv=None) -> tuple[int, str, str | None]:
    """(exit code, report, output path)."""
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return (EXIT_OK if e.code == 0 else EXIT_BAD_INPUT), "", None
    if args.threads < 1 or (args.budget is not None and args.budget < 1):
        return EXIT_BAD_INPUT, "error: --threads and --budget must be positive", None
    try:
        data, text = args.func(args)
    except BudgetExceeded as e:
        return EXIT_BUDGET, f"budget exceeded: {e}", None
    except (BadInput, ButsonError, ValueError, OSError) as e:
        return EXIT_BAD_INPUT, f"error: {e}", None
    out = json.dumps(data, sort_keys=True) if args.format == "json" else text
    return EXIT_OK, out, args.output


def main(argv=None) -> int:
    code, out, dest = run(argv)
    if dest:
        Path(dest).write_text(out + "\n", encoding="utf-8")
    elif out:
        print(out, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

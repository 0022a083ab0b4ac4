"""cragtool: command-line front end.

Every command prints one JSON document on stdout.  Exit status is 0 on a
certified result, 2 when the result is undecided or only heuristic, and 1
on error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import zerodim
from .errors import CragError, ParseError
from .euler import BasicBlock, SemialgebraicSet, chi_star, euler_closed
from .gadgets import compile_union, example, one_point_compactify, suspend
from .io import dump_document, dump_poly, dumps, parse_input
from .poly import Field, PolySystem
from .witness import WitnessMode, alpha_sequence, qe_bounds

COMMANDS = ("count-real", "count-complex", "dim", "degree", "euler-star", "euler-closed",
            "compile-gadget", "suspend", "compactify", "example", "qe-bounds", "alpha")


def _json_value(v):
    if v is zerodim.INFINITE:
        return "infinite"
    if isinstance(v, Fraction):
        return str(v)
    return v


def _read_input(args):
    if not args.input:
        raise ParseError("--input is required for this command")
    if args.input == "-":
        return parse_input(sys.stdin.read())
    with open(args.input) as fh:
        return parse_input(fh.read())


def _as_system(obj, field):
    if isinstance(obj, PolySystem):
        return PolySystem(obj.nvars, obj.polys, field)
    raise ParseError("this command takes a 'system' document")


def _as_set(obj):
    if isinstance(obj, SemialgebraicSet):
        return obj
    if obj.field is not Field.REAL and any(p.is_complex for p in obj.polys):
        raise ParseError("a semialgebraic set needs real coefficients")
    polys = [p for p in obj.polys if not p.is_zero()]
    if not obj.polys:
        raise ParseError("empty system")
    if len(polys) > 1:
        g = polys[0] * polys[0]
        for p in polys[1:]:
            g = g + p * p
    else:
        g = polys[0] if polys else obj.polys[0]
    return SemialgebraicSet(obj.nvars, [BasicBlock(g)])


def _single_poly(obj):
    if not isinstance(obj, PolySystem) or len(obj.polys) != 1:
        raise ParseError("this command takes a system with exactly one polynomial")
    return obj.polys[0]


def _rationals(text):
    return [Fraction(t) for t in text.split(",") if t.strip()]


def run(args) -> tuple[dict, int]:
    """Execute one parsed command; returns (document, exit status)."""
    cmd = args.command
    out = {"command": cmd, "seed": args.seed, "certified": True}
    status = 0
    if cmd in ("count-real", "count-complex"):
        field = Field.REAL if cmd == "count-real" else Field.COMPLEX
        sysm = _as_system(_read_input(args), field)
        got = zerodim.count_points(sysm)
        out["result"] = _json_value(got.count)
        out["certificate"] = {"backend": "msolve" if sysm.nvars > 1 else "sturm"}
    elif cmd == "dim":
        from .degree import dimension
        out["result"] = dimension(_as_system(_read_input(args), Field.COMPLEX), args.seed)
    elif cmd == "degree":
        from .degree import geometric_degree
        sysm = _as_system(_read_input(args), Field.COMPLEX)
        bounds = None
        if args.witness == "paper":
            delta = max([2] + [p.degree for p in sysm.polys if not p.is_zero()])
            bounds = qe_bounds(sysm.nvars * (sysm.nvars + 1), sysm.nvars, 1,
                               max(1, len(sysm.polys)), delta, 1)
        res = geometric_degree(sysm, args.seed, mode=WitnessMode(args.witness), bounds=bounds)
        out["result"] = res.degree
        out["dim"] = res.dim
        out["certified"] = res.certified
        out["certificate"] = {
            "witness_mode": args.witness,
            "slices": [None if c is None else {"verdict": c.verdict, "smooth": c.smooth_ok,
                                               "infinity": c.infinity_ok,
                                               "points": c.point_count}
                       for c in res.slices]}
    elif cmd == "euler-star":
        res = chi_star(_as_set(_read_input(args)), args.seed, refine_depth=args.refine_depth)
        out["result"] = res.value
        out["empty"] = res.empty
        out["certificate"] = {"terms": [[list(I), v] for I, v in res.terms]}
    elif cmd == "euler-closed":
        sset = _as_set(_read_input(args))
        schedule = [int(r) for r in args.radius_schedule.split(",")]
        certified_radius = Fraction(args.certified_radius) if args.certified_radius else None
        res = euler_closed(sset, schedule, args.seed, certified_radius=certified_radius,
                           refine_depth=args.refine_depth)
        out["result"] = res.value
        out["certified"] = not res.heuristic
        out["certificate"] = {"radius": str(res.radius),
                              "history": [[str(r), v] for r, v in res.history]}
        if res.heuristic:
            out["reason"] = "radius stabilization is heuristic"
            status = 2
    elif cmd == "compile-gadget":
        obj = _read_input(args)
        sset = _as_set(obj)
        g = compile_union(sset)
        out["result"] = dump_document(PolySystem(g.F.nvars, [g.F], Field.REAL))
        out["multiplier"] = g.multiplier
        out["r"] = g.r
        out["slack_vars"] = list(g.slack_names)
    elif cmd == "suspend":
        f = _single_poly(_read_input(args))
        out["result"] = dump_poly(suspend(f))
        out["nvars"] = f.nvars + 2
    elif cmd == "compactify":
        f = _single_poly(_read_input(args))
        if not args.xi:
            raise ParseError("--xi is required")
        out["result"] = dump_poly(one_point_compactify(f, _rationals(args.xi)))
        out["nvars"] = f.nvars
    elif cmd == "example":
        params = dict(kv.split("=", 1) for kv in args.param)
        spec = example(args.name, params)
        out["result"] = dump_document(spec.obj)
        out["name"] = spec.name
        out["expected"] = {k: {"value": v.value, "provenance": v.provenance}
                           for k, v in sorted(spec.expected.items())}
    elif cmd == "qe-bounds":
        b = qe_bounds(args.k, args.n, args.w, args.m, args.delta, args.ell,
                      constant=args.constant)
        out["result"] = {"logD": b.logD, "logL": b.logL, "logM": b.logM}
        out["certificate"] = {"constant_policy": b.constant_policy, "constant": b.constant,
                              "blocks": b.inputs["blocks"]}
    elif cmd == "alpha":
        out["result"] = alpha_sequence(args.k, args.L, args.D)
    return out, status


def build_parser():
    ap = argparse.ArgumentParser(prog="cragtool", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("name", nargs="?", help="example name")
    ap.add_argument("--input", help="JSON document, or - for stdin")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--witness", choices=("random", "paper"), default="random")
    ap.add_argument("--max-vars", type=int, default=zerodim.Limits.max_vars)
    ap.add_argument("--max-degree", type=int, default=zerodim.Limits.max_degree)
    ap.add_argument("--radius-schedule", default="2,4,16,256,65536")
    ap.add_argument("--certified-radius")
    ap.add_argument("--refine-depth", type=int, default=4)
    ap.add_argument("--xi", help="comma-separated inversion center")
    ap.add_argument("--param", action="append", default=[], help="example parameter k=v")
    for flag in ("k", "n", "w", "m", "ell", "L", "D"):
        ap.add_argument(f"--{flag}", type=int, default=1)
    ap.add_argument("--delta", type=int, default=2)
    ap.add_argument("--constant", type=int)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "example" and not args.name:
        args.name = ""
    saved = zerodim.LIMITS
    zerodim.LIMITS = zerodim.Limits(args.max_vars, args.max_degree)
    start = time.perf_counter()
    try:
        doc, status = run(args)
    except CragError as exc:
        doc = {"command": args.command, "seed": args.seed, "certified": False,
               "error": exc.code, "reason": str(exc)}
        status = 2 if exc.code in ("undecided", "no_majority", "witness_budget_exhausted",
                                   "morse_budget_exhausted", "no_stabilization") else 1
    finally:
        zerodim.LIMITS = saved
    doc["timing"] = round(time.perf_counter() - start, 6)
    print(dumps(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command produces a list of records.  Records print as an aligned
table, and as one JSON object per line with ``--format json`` or into the
file named by ``--out``.  Exit status: 0 success, 1 mathematical failure,
2 input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time

from .catdata import (
    ParseError,
    SubcategorySpec,
    build_graded_vect,
    build_lambda2,
    build_lambda3_twisted,
    build_trivial,
    build_z3_zeta,
    closure,
    read_datum,
    validate_category,
)
from .coend import BudgetExceeded, DEFAULT_BUDGET, coend, dump_coend, htr_hom, twisted_hom
from .diagram import DiagramError, evaluate, parse_word
from .exactla import parse_field
from .skein import (
    AdmissibilityError,
    SurfaceSpec,
    annulus_HH0,
    boundary_value,
    disc_closed_skein,
    interval_skein,
    loop_independence_certificate,
    mtrace_space,
    partial_trace_defects,
    sphere_skein,
    surface_skein,
    trace_space,
    twisted_loop_pipeline,
)

DEFAULT_SAMPLES = "0,0 1,0 0,1 1,1"


class InputError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, records, message):
        super().__init__(message)
        self.records = records


# -- data -----------------------------------------------------------------------------------------

BUILTINS = {
    "trivial": lambda f: build_trivial(f),
    "z2": lambda f: build_graded_vect(2, [1, -1], f, title="graded_vect_2_sign"),
    "z3": lambda f: build_z3_zeta(f),
    "z3-spherical": lambda f: build_graded_vect(3, [1, 1, 1], f, title="graded_vect_3"),
    "lambda2": lambda f: build_lambda2(f),
    "lambda3": lambda f: build_lambda3_twisted(f, _samples(DEFAULT_SAMPLES)),
}


def load(source: str, field_spec: str | None):
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTINS:
            raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
        return BUILTINS[name](parse_field(field_spec or "7"))
    c = read_datum(source)
    if field_spec and str(parse_field(field_spec)) != str(c.fld):
        raise InputError(f"{source} is over {c.fld}, not {field_spec}")
    return c


def subcat(c, spec: str | None, role: str = "S") -> SubcategorySpec:
    if spec is None:
        return SubcategorySpec(tuple(c.listed), role)
    subs = getattr(c, "subcats", {}) or {}
    if spec in subs:
        return SubcategorySpec(tuple(subs[spec]), role)
    try:
        return SubcategorySpec(tuple(c.index(t) for t in spec.split(",")), role)
    except KeyError as e:
        raise InputError(f"unknown subcategory or object in {spec!r}: {e}") from None


def _samples(text: str):
    out = []
    for tok in text.split():
        parts = tok.split(",")
        if len(parts) != 2:
            raise InputError(f"sample {tok!r} must read LAMBDA,MU")
        out.append((int(parts[0]), int(parts[1])))
    return out


def _labels(c, text: str | None):
    if not text:
        return []
    return [boundary_value(c, chunk) for chunk in text.split("|")]


_SURF = re.compile(r"^surface\((\d+),(\d+)\)$")
_INTV = re.compile(r"^interval\(([^,]+),([^,]+)\)$")


# -- commands -------------------------------------------------------------------------------------


def cmd_validate(c, args):
    rep = validate_category(c)
    rec = {"command": "validate", "datum": getattr(c, "title", "?"), "field": str(c.fld), "ok": rep.ok,
           "report": rep.summary()}
    if not rep.ok:
        raise MathFailure([rec], rep.summary())
    return [rec]


def cmd_skein(c, args):
    S = subcat(c, args.subcat_s)
    T = subcat(c, args.subcat_t, "T") if args.subcat_t else None
    m = args.manifold.replace(" ", "")
    labels = _labels(c, args.labels)
    rec = {"command": "skein", "datum": getattr(c, "title", "?"), "field": str(c.fld), "manifold": m}
    if m == "annulus" and not labels:
        p = surface_skein(c, SurfaceSpec(0, [(), ()], S, T), args.budget)
    elif m == "disc":
        p = surface_skein(c, SurfaceSpec(0, labels or [()], S, T), args.budget)
    elif m == "sphere":
        p = sphere_skein(c, _closed(c, S))
    elif m == "annulus":
        p = surface_skein(c, SurfaceSpec(0, labels, S, T), args.budget)
    elif _SURF.match(m):
        g, n = map(int, _SURF.match(m).groups())
        bd = labels + [()] * (n - len(labels))
        if len(bd) != n:
            raise InputError(f"{len(labels)} boundary label groups for {n} circles")
        p = surface_skein(c, SurfaceSpec(g, bd, S, T, args.schedule), args.budget)
    elif _INTV.match(m):
        v, w = (c.index(x) for x in _INTV.match(m).groups())
        h = interval_skein(c, v, w, S)
        rec.update(dim=h.dim, kind="interval")
        return [rec]
    else:
        raise InputError(f"unknown manifold {args.manifold!r}")
    rec.update(p.summary())
    return [rec]


def _closed(c, S):
    from .catdata import ideal_closure

    return [m for m in ideal_closure(c, S).members if m in c.listed]


def cmd_traces(c, args):
    I = subcat(c, args.subcat_s, "I")
    sides = ["trace", "right", "left", "two_sided"] if args.side == "all" else [args.side]
    out = []
    for side in sides:
        t = trace_space(c, I) if side == "trace" else mtrace_space(c, I, side)
        funcs = [" ".join(c.fld.fmt(x) for x in row) for row in t.ambient_functionals()]
        rec = {"command": "traces", "datum": getattr(c, "title", "?"), "field": str(c.fld), "side": side,
               "dim": t.dim, "functionals": funcs, "defects": len(partial_trace_defects(t)), "labels": t.labels}
        out.append(rec)
    rec = {"command": "traces", "datum": getattr(c, "title", "?"), "field": str(c.fld), "side": "skeins",
           "annulus_dim": annulus_HH0(c, I).dim, "disc_dim": disc_closed_skein(c, I).dim,
           "sphere_dim": sphere_skein(c, I).dim}
    out.append(rec)
    if any(r.get("defects") for r in out):
        raise MathFailure(out, "a recovered functional violates its partial-trace identity")
    if args.certificate:
        J = subcat(c, args.certificate)
        cert = loop_independence_certificate(c, J)
        out.append({"command": "traces", "side": "certificate", **cert.summary()})
        if not cert.passed:
            raise MathFailure(out, "loop-independence certificate failed")
    return out


def cmd_coend(c, args):
    objs = list(subcat(c, args.subcat_s).members)
    v = c.index(args.v) if args.v else None
    w = c.index(args.w) if args.w else None
    res = coend(twisted_hom(c, objs, v, w), check=not args.no_check, budget=args.budget)
    rec = {"command": "coend", "datum": getattr(c, "title", "?"), "field": str(c.fld), **res.summary()}
    if args.dump:
        rec["text"] = dump_coend(res)
    return [rec]


def cmd_htr(c, args):
    objs = list(subcat(c, args.subcat_t, "T").members)
    b1, b2 = c.index(args.b1), c.index(args.b2)
    h = htr_hom(c, objs, b1, b2, budget=args.budget)
    return [{"command": "htr", "datum": getattr(c, "title", "?"), "field": str(c.fld), "b1": args.b1, "b2": args.b2,
             **h.result.summary()}]


def cmd_closure(c, args):
    S = subcat(c, args.subcat_s)
    cl = closure(c, S, args.kind)
    return [{"command": "closure", "datum": getattr(c, "title", "?"), "kind": args.kind,
             "input": [c.name(x) for x in S.members], "closure": [c.name(x) for x in cl.members],
             "closure_dim": len(cl.members)}]


def cmd_twisted_traces(fld_spec, args):
    rep = twisted_loop_pipeline(parse_field(fld_spec or "7"), _samples(args.samples))
    rec = {"command": "twisted-traces", **rep.summary()}
    if not rep.passed:
        raise MathFailure([rec], "eigenvalue trace checks failed")
    return [rec]


def cmd_evaluate(c, args):
    w = parse_word(c, args.word)
    f = evaluate(c, w)
    return [{"command": "evaluate", "src": c.name(f.src), "dst": c.name(f.dst),
             "coords": " ".join(c.fld.fmt(x) for x in c.coords(f))}]


COMMANDS = {
    "validate": cmd_validate,
    "skein": cmd_skein,
    "traces": cmd_traces,
    "coend": cmd_coend,
    "htr": cmd_htr,
    "closure": cmd_closure,
    "evaluate": cmd_evaluate,
}


# -- plumbing -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or a prime (7, F13); builtins default to F7")
    common.add_argument("--two-prime", metavar="P,Q", help="run over two prime fields and compare dimensions")
    common.add_argument("--out", help="append JSON lines to this file")
    common.add_argument("--format", choices=["table", "json"], default="table")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--timing", action="store_true", help="report wall time per run")

    p = argparse.ArgumentParser(prog="admskein", description="Exact admissible skein module computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def data(sp):
        sp.add_argument("data", help="datum file or builtin:NAME (" + ", ".join(BUILTINS) + ")")

    sp = sub.add_parser("validate", parents=[common], help="check the pivotal axioms")
    data(sp)
    sp = sub.add_parser("skein", parents=[common], help="skein module of a surface")
    data(sp)
    sp.add_argument("--manifold", required=True, help="disc | annulus | sphere | surface(G,N) | interval(V,W)")
    sp.add_argument("--subcat-s", help="admissibility subcategory: a named subcategory or OBJ,OBJ")
    sp.add_argument("--subcat-t", help="coend scope T containing S")
    sp.add_argument("--labels", help="boundary labels per circle, e.g. 'X1+ X2+ | X1-'")
    sp.add_argument("--schedule", help="custom cut word, e.g. 'b a b- a-'")
    sp = sub.add_parser("traces", parents=[common], help="trace and m-trace spaces")
    data(sp)
    sp.add_argument("--subcat-s", help="the ideal")
    sp.add_argument("--side", default="all", choices=["all", "trace", "right", "left", "two_sided"])
    sp.add_argument("--certificate", metavar="J", help="also certify independence of the loops on J")
    sp = sub.add_parser("coend", parents=[common], help="coend of Hom(- (x) V, W (x) -)")
    data(sp)
    sp.add_argument("--subcat-s", help="objects to take the coend over")
    sp.add_argument("--v")
    sp.add_argument("--w")
    sp.add_argument("--dump", action="store_true", help="include the structured text export")
    sp.add_argument("--no-check", action="store_true", help="skip the functoriality check")
    sp = sub.add_parser("htr", parents=[common], help="horizontal trace hom space")
    data(sp)
    sp.add_argument("--subcat-t", help="coend scope")
    sp.add_argument("--b1", required=True)
    sp.add_argument("--b2", required=True)
    sp = sub.add_parser("closure", parents=[common], help="ideal or tensor-dual closure")
    data(sp)
    sp.add_argument("--subcat-s", required=True)
    sp.add_argument("--kind", default="ideal", choices=["ideal", "tensor_dual"])
    sp = sub.add_parser("twisted-traces", parents=[common], help="eigenvalue traces on twisted modules")
    sp.add_argument("--samples", default=DEFAULT_SAMPLES, help="space separated LAMBDA,MU pairs")
    sp = sub.add_parser("evaluate", parents=[common], help="evaluate a diagram word")
    data(sp)
    sp.add_argument("--word", required=True, help="word literal, ';' separates lines")
    return p


def _run_once(args, fld_spec):
    t = time.perf_counter()
    if args.command == "twisted-traces":
        recs = cmd_twisted_traces(fld_spec, args)
    else:
        c = load(args.data, fld_spec)
        recs = COMMANDS[args.command](c, args)
    if args.timing:
        for r in recs:
            r["seconds"] = round(time.perf_counter() - t, 3)
    return recs


def _dims(recs):
    out = []
    for r in recs:
        out.append({k: v for k, v in r.items() if k in ("dim", "ambient", "relation_rank", "closure_dim", "loop_rank",
                                                        "coend_dim", "annulus_dim", "disc_dim", "sphere_dim", "rank")})
    return out


def _fmt_value(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt_value(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_table(recs) -> str:
    lines = []
    for r in recs:
        width = max((len(k) for k in r), default=0)
        for k, v in r.items():
            if k == "text":
                continue
            lines.append(f"{k.ljust(width)}  {_fmt_value(v)}")
        if "text" in r:
            lines.append(r["text"].rstrip("\n"))
        lines.append("")
    return "\n".join(lines)


def emit(recs, args, stream):
    if args.format == "json":
        for r in recs:
            stream.write(json.dumps(r, default=str, sort_keys=False) + "\n")
    else:
        stream.write(render_table(recs) + "\n")
    if args.out:
        with open(args.out, "a", encoding="utf-8") as fh:
            for r in recs:
                fh.write(json.dumps(r, default=str) + "\n")


def main(argv=None, stream=None) -> int:
    stream = sys.stdout if stream is None else stream
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        if args.two_prime:
            primes = [p.strip() for p in args.two_prime.split(",")]
            if len(primes) != 2:
                raise InputError("--two-prime expects two primes, e.g. 7,13")
            if args.command != "twisted-traces" and not args.data.startswith("builtin:"):
                raise InputError("--two-prime needs builtin data (files carry their own field)")
            runs = [_run_once(args, p) for p in primes]
            recs = runs[0] + runs[1]
            agree = _dims(runs[0]) == _dims(runs[1])
            recs.append({"command": "two-prime", "fields": primes, "agree": agree})
            emit(recs, args, stream)
            return 0 if agree else 1
        recs = _run_once(args, args.field)
        emit(recs, args, stream)
        return 0
    except MathFailure as e:
        emit(e.records, args, stream)
        print(f"failure: {e}", file=sys.stderr)
        return 1
    except (InputError, ParseError, DiagramError, AdmissibilityError, BudgetExceeded, KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``cdu <command> [flags]``.

Exit codes: 0 success, 1 a verified claim failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from cdu.analysis import (
    c_uniformity,
    ddt_csv,
    full_c_sweep,
    walsh_coefficient,
    FunctionTable,
)
from cdu.families import FamilyId, HypothesisViolation, ShapeMismatch, as_lut, evaluate, instantiate
from cdu.gf import FieldCtx, FieldError, build_field, format_spec, parse_modulus, parse_spec
from cdu.harness.core import SuiteConfig, UnsupportedParameters
from cdu.harness.report import build_report, dumps, failures
from cdu.harness.suites import SUITE_IDS, run_suite
from cdu import solvers


class UsageError(Exception):
    pass


def _common(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("field and family")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--n", type=int, help="extension degree")
    g.add_argument("--m", type=int, help="subfield degree of the family")
    g.add_argument("--mod", help='modulus digits, highest degree first, or a full spec "p=2,n=6,mod=1000011"')
    g.add_argument("--family", choices=[f.value for f in FamilyId])
    g.add_argument("--delta", default="0", help="element index, or comma-separated digits highest degree first")
    g.add_argument("--c", help="element index or digits")
    g.add_argument("--format", choices=["json", "csv"], default="json")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--workers", type=int, help="process count (default: $CDU_WORKERS or 1)")
    g.add_argument("--sample", help="sample sizes for large fields: DELTAxC, or one number for both")
    g.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                   help="enforce the stated hypotheses (--no-strict allows exploratory parameters)")
    g.add_argument("--output", help="also write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdu", description="c-differential uniformity lab")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        return sp

    add("field", "describe the field")
    add("eval", "evaluate a family at one point").add_argument("--x", default="0")
    add("lut", "dump the value table of a family")
    add("ddt", "c-DDT of a family for one c (CSV)")
    add("uniformity", "c-differential uniformity report for one c")
    add("sweep", "uniformity for every c")
    add("walsh", "Walsh spectrum of x -> Tr(u F(x))").add_argument("--u", default="1")
    v = add("verify", "run a verification suite")
    v.add_argument("suite", help=", ".join(SUITE_IDS) + " or all")
    s = add("solve", "trinomial, cubic or linearized kernel")
    s.add_argument("kind", choices=["trinomial", "cubic", "kernel"])
    s.add_argument("--k", type=int, default=1, help="Frobenius step of the trinomial")
    s.add_argument("--a", default="1", help="trinomial coefficient a")
    s.add_argument("--b", default="0", help="trinomial constant b")
    s.add_argument("--b1", default="1", help="cubic coefficient of u")
    s.add_argument("--b0", default="1", help="cubic constant")
    s.add_argument("--coeffs", default="0:1", help="kernel: i:c pairs, e.g. 0:2,1:1 for X^p + 2X")
    s.add_argument("--rhs", default="0", help="kernel: solve L(x) = rhs as well")
    return parser


# -- argument resolution ----------------------------------------------------------

def _element(ctx: FieldCtx, text: str) -> int:
    text = str(text).strip()
    if "," in text:
        digits = [int(d) for d in reversed(text.split(","))]
        if len(digits) > ctx.n or any(not 0 <= d < ctx.p for d in digits):
            raise UsageError(f"{text!r} is not an element of F_{ctx.q}")
        return ctx.from_digits(digits + [0] * (ctx.n - len(digits)))
    try:
        x = int(text)
    except ValueError:
        raise UsageError(f"cannot read element {text!r}") from None
    if not 0 <= x < ctx.q:
        raise UsageError(f"{x} is not an element of F_{ctx.q}")
    return x


def _field(args) -> FieldCtx:
    if args.mod and args.mod.startswith("p="):
        return build_field(parse_spec(args.mod))
    p, n = args.p, args.n
    if args.family:
        fid = FamilyId.parse(args.family)
        if args.m is None:
            raise UsageError("--family needs --m")
        p = p or (2 if fid.binary else 3)
        n = n or fid.degree(args.m)
    if p is None or n is None:
        raise UsageError("give --p and --n, a --family with --m, or a full --mod spec")
    modulus = parse_modulus(args.mod, p) if args.mod else None
    return build_field(p, n, modulus)


def _instance(args):
    if not args.family:
        raise UsageError("--family is required")
    ctx = _field(args)
    return instantiate(args.family, ctx, args.m, _element(ctx, args.delta), strict=args.strict)


def _c(args, ctx) -> int:
    if args.c is None:
        raise UsageError("--c is required")
    return _element(ctx, args.c)


def _sample(text: str | None) -> tuple[int, int]:
    if text is None:
        return 20, 40
    try:
        if "x" in text:
            d, c = text.lower().split("x")
            return int(d), int(c)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"--sample expects DELTAxC, got {text!r}") from None


def _header(inst) -> dict:
    return {"field": inst.ctx.spec.to_dict(), "family": inst.id.value, "m": inst.m, "delta": inst.delta,
            "exploratory": inst.exploratory}


def _emit(text: str, args) -> None:
    sys.stdout.write(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- commands ----------------------------------------------------------------------

def cmd_field(args) -> int:
    ctx = _field(args)
    info = {**ctx.spec.to_dict(), "spec": format_spec(ctx.spec), "q": ctx.q, "tables": ctx.has_tables,
            "generator": ctx.generator}
    _emit(_json(info), args)
    return 0


def cmd_eval(args) -> int:
    inst = _instance(args)
    x = _element(inst.ctx, args.x)
    _emit(_json({**_header(inst), "x": x, "value": evaluate(inst, x)}), args)
    return 0


def cmd_lut(args) -> int:
    inst = _instance(args)
    vals = as_lut(inst).values.tolist()
    if args.format == "csv":
        _emit("x,F(x)\n" + "".join(f"{i},{v}\n" for i, v in enumerate(vals)), args)
    else:
        _emit(_json({**_header(inst), "values": vals}), args)
    return 0


def cmd_ddt(args) -> int:
    inst = _instance(args)
    _emit(ddt_csv(as_lut(inst), _c(args, inst.ctx)), args)
    return 0


def cmd_uniformity(args) -> int:
    inst = _instance(args)
    rep = c_uniformity(as_lut(inst), _c(args, inst.ctx))
    if args.format == "csv":
        _emit(f"c,max,classification\n{rep.c},{rep.max_entry},{rep.classification}\n", args)
    else:
        _emit(_json({**_header(inst), **rep.to_dict()}), args)
    return 0


def cmd_sweep(args) -> int:
    inst = _instance(args)
    cs = None if args.c is None else [_c(args, inst.ctx)]
    reports = full_c_sweep(as_lut(inst), cs, workers=args.workers)
    if args.format == "csv":
        _emit("c,max,classification\n" + "".join(f"{r.c},{r.max_entry},{r.classification}\n" for r in reports), args)
    else:
        _emit(_json({**_header(inst), "reports": [r.to_dict() for r in reports]}), args)
    return 0


def cmd_walsh(args) -> int:
    inst = _instance(args)
    ctx = inst.ctx
    u = _element(ctx, args.u)
    f = FunctionTable(ctx, ctx.vtrace(ctx.vmul(u, as_lut(inst).values)))
    rows = []
    for v in range(ctx.q):
        w = walsh_coefficient(f, v)
        rows.append({"v": v, "W": str(w), "norm2": w.norm_squared().to_int()})
    if args.format == "csv":
        _emit("v,W,norm2\n" + "".join(f"{r['v']},{r['W']},{r['norm2']}\n" for r in rows), args)
    else:
        _emit(_json({**_header(inst), "u": u, "spectrum": rows}), args)
    return 0


def cmd_verify(args) -> int:
    d, c = _sample(args.sample)
    cfg = SuiteConfig(p=args.p, m=args.m, sample_delta=d, sample_c=c, seed=args.seed, workers=args.workers,
                      strict=args.strict, output=args.output)
    results = run_suite(args.suite, cfg)
    _emit(dumps(build_report(args.suite, cfg, results)), args)
    return 1 if failures(results) else 0


def cmd_solve(args) -> int:
    ctx = _field(args)
    if args.kind == "trinomial":
        t = solvers.TrinomialInstance(ctx, args.k, _element(ctx, args.a), _element(ctx, args.b))
        out = {"k": t.k, "a": t.a_t, "b": t.b_t, "g": t.g, "ell": t.ell, "roots": solvers.trinomial_roots(t)}
        if t.ell > 1:
            alpha, beta = solvers.cm04_alpha_beta(t)
            out.update(alpha=alpha, beta=beta)
    elif args.kind == "cubic":
        r = solvers.cubic_roots_char2(ctx, _element(ctx, args.b1), _element(ctx, args.b0))
        out = {"roots": r.roots, "trace_condition": r.trace_condition, "cube_condition": r.cube_condition,
               "predicts_three": r.predicts_three}
    else:
        coeffs = {}
        for pair in args.coeffs.split(","):
            i, _, c = pair.partition(":")
            coeffs[int(i) % ctx.n] = _element(ctx, c)
        L = solvers.LinearizedPoly(ctx, coeffs)
        basis, dim = solvers.linearized_kernel(L)
        rhs = _element(ctx, args.rhs)
        out = {"kernel_basis": basis, "dim": dim, "rhs": rhs, "solutions": solvers.solve_affine(L, rhs)}
    _emit(_json({"field": ctx.spec.to_dict(), "kind": args.kind, **out}), args)
    return 0


COMMANDS = {
    "field": cmd_field,
    "eval": cmd_eval,
    "lut": cmd_lut,
    "ddt": cmd_ddt,
    "uniformity": cmd_uniformity,
    "sweep": cmd_sweep,
    "walsh": cmd_walsh,
    "verify": cmd_verify,
    "solve": cmd_solve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FieldError, ShapeMismatch, HypothesisViolation, UnsupportedParameters,
            solvers.PreconditionViolation) as exc:
        print(f"cdu: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

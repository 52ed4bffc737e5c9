"""Command-line front end.  Exit codes: 0 success, 1 failed check, 2 error."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from fractions import Fraction

from . import cuts as C
from .config import DEFAULT
from .errors import HahnError
from .extend import (
    MinimalPolyInfo, artin_schreier_q, ball_of, hensel_trace, normal_form_violations,
    normalize_sum, quotient_reassembles, split_quotient,
)
from .example import artin_schreier_polys, example_field, partial_sums, run_example
from .literals import parse_cut, parse_elem, parse_field, parse_group, parse_series
from .report import emit_report, make_report
from .sampling import random_elem, rng_for, tower_samples
from .series import HahnField, RootSection, TableFactorSet, TrivialFactorSet, cocycle_verify, derive_factor_set
from .tower import (
    above, check_tower_axioms, in_complement, mu, shifted_tower, split_at, truncation_tower,
)

# -- context -------------------------------------------------------------------


def _config(args):
    cfg = DEFAULT
    if args.depth is not None:
        cfg = replace(cfg, depth=args.depth)
    if args.bound_monoid is not None:
        cfg = replace(cfg, monoid_cap=args.bound_monoid)
    if args.horizon is not None:
        cfg = replace(cfg, horizon=args.horizon)
    return cfg


def _parse_kv(spec):
    out = {}
    for part in filter(None, spec.split(",")):
        key, _, val = part.partition("=")
        out[key.strip()] = val.strip()
    return out


def load_table(path, group, field):
    """{"entries": [{"a": "1", "b": "1", "value": "2"}, ...]}"""
    with open(path) as fh:
        data = json.load(fh)
    probe = HahnField(group, field)
    entries = {}
    for ent in data["entries"]:
        a, b = parse_elem(str(ent["a"]), group), parse_elem(str(ent["b"]), group)
        val = parse_series(str(ent["value"]), probe)
        if not val.is_finite or any(e != group.zero for e, _ in val.terms()) or val.is_zero():
            raise ValueError(f"table value {ent['value']!r} is not a nonzero constant")
        entries[(a, b)] = val.coeff(group.zero)
    return TableFactorSet(field, entries, name=path.rsplit("/", 1)[-1])


def build_factor_set(spec, group, field):
    if spec in (None, "trivial"):
        return TrivialFactorSet(field)
    kind, _, rest = spec.partition(":")
    if kind == "derived":
        kv = _parse_kv(rest)
        n = int(kv.get("n", 2))
        if group.is_lex or group.dense or group.step != Fraction(1, n):
            raise ValueError(f"derived:n={n} needs the group (1/{n})Z")
        c = parse_series(kv.get("c", "2"), HahnField(group, field)).coeff(group.zero)
        return derive_factor_set(RootSection(field, n, c))
    if kind == "table":
        return load_table(rest, group, field)
    raise ValueError(f"unknown factor set {spec!r}")


def build_ring(args, cfg):
    group = parse_group(args.group)
    field = parse_field(args.field)
    fs = build_factor_set(args.factor_set, group, field)
    return HahnField(group, field, fs, cfg)


def _options(args):
    keep = ("group", "field", "factor_set", "depth", "seed")
    if args.command in ("as-q", "example-wtoc"):
        # these commands build their own field
        keep = ("seed",)
    return {k: getattr(args, k) for k in keep if getattr(args, k, None) is not None}


# -- commands ---------------------------------------------------------------------


def cmd_eval(args, ring, cfg):
    x = parse_series(args.expr, ring)
    return {"expr": args.expr}, {"series": x}, True


def cmd_truncate(args, ring, cfg):
    x = parse_series(args.expr, ring)
    at = parse_cut(args.at, ring.group)
    return {"expr": args.expr, "at": at}, {"series": x.truncate(at)}, True


def cmd_mu(args, ring, cfg):
    x = parse_series(args.expr, ring)
    return {"expr": args.expr}, {"mu": mu(x)}, True


def cmd_split(args, ring, cfg):
    x = parse_series(args.expr, ring)
    at = parse_cut(args.at, ring.group)
    x1, x2 = split_at(x, at)
    checks = {
        "x1_in_complement": in_complement(x1, at),
        "x2_above": above(x2, at),
        "sum_matches": (x1 + x2).agrees_to(x, cfg.depth),
    }
    return {"expr": args.expr, "at": at}, {"x1": x1, "x2": x2, "checks": checks}, all(checks.values())


def cmd_cocycle(args, ring, cfg):
    g = ring.group
    fs = ring.factor_set
    if args.table:
        fs = load_table(args.table, g, ring.field)
    rng = rng_for(args.seed)
    samples = []
    if isinstance(fs, TableFactorSet):
        for a, b in sorted(fs.entries, key=str):
            samples.append((a, b, g.zero))
            samples.append((b, a, g.zero))
    samples += [tuple(random_elem(g, rng, 4) for _ in range(3)) for _ in range(args.samples)]
    rep = cocycle_verify(fs, samples, g)
    return {"factor_set": fs.literal(), "samples": len(samples)}, rep, rep["pass"]


def cmd_tower(args, ring, cfg):
    rng = rng_for(args.seed)
    if args.corrupt:
        T = shifted_tower(ring, parse_elem(args.corrupt, ring.group))
    else:
        T = truncation_tower(ring)
    pairs, cuts, elems = tower_samples(ring, rng, args.samples)
    rep = check_tower_axioms(T, pairs, cuts, cfg.depth, elems)
    failures = [r for r in rep if r["status"] != "pass"]
    summary = {}
    for r in rep:
        s = summary.setdefault(r["axiom"], {"pass": 0, "fail": 0})
        s[r["status"]] += 1
    out = {"summary": summary, "failures": failures[:20], "tower": T.label}
    return {"samples": args.samples}, out, not failures


_CUT_OPS = {
    "left_sum": (2, C.left_sum),
    "right_sum": (2, C.right_sum),
    "diff": (2, C.diff),
    "neg": (1, C.neg_cut),
    "z_mul": (1, C.z_mul),
    "hat": (1, C.hat),
    "cmp": (2, lambda a, b: C.cmp_cut(a, b).name),
}


def cmd_cut(args, ring, cfg):
    g = ring.group
    op, rest = args.op, args.args
    if op in _CUT_OPS:
        arity, fn = _CUT_OPS[op]
        if len(rest) != arity:
            raise ValueError(f"{op} takes {arity} cut(s)")
        cs = [parse_cut(t, g) for t in rest]
        return {"op": op, "args": cs}, {"result": fn(*cs)}, True
    if op == "shift":
        x, a = parse_elem(rest[0], g), parse_cut(rest[1], g)
        return {"op": op, "args": [g.format_elem(x), a]}, {"result": C.shift(x, a)}, True
    if op == "n_fold":
        a, b = parse_cut(rest[0], g), parse_cut(rest[1], g)
        n, sign = int(rest[2]), rest[3]
        return {"op": op, "args": [a, b, n, sign]}, {"result": C.n_fold(a, b, n, sign)}, True
    if op in ("set_cut", "set_cut_enum"):
        xs = [parse_elem(t, g) for t in rest]
        res = C.set_cut(g, xs, enumerated=op == "set_cut_enum", cap=cfg.zmul_cap)
        return {"op": op, "args": [g.format_elem(x) for x in xs]}, {"result": res}, True
    raise ValueError(f"unknown cut operation {op!r}")


def _poly(text, ring):
    return [parse_series(part, ring) for part in text.split(";")]


def cmd_hensel(args, ring, cfg):
    coeffs = _poly(args.poly, ring)
    root = parse_series(args.root, ring).coeff(ring.group.zero)
    b, trace = hensel_trace(coeffs, root, cfg.depth)
    vals = ["inf" if v is None else ring.group.format_elem(v) for v in trace]
    ok = all(a is None or b_ is None or a < b_ for a, b_ in zip(trace, trace[1:]))
    return {"poly": args.poly, "root": args.root}, {"root": b, "residual_valuations": vals}, ok


def cmd_quot(args, ring, cfg):
    d, c = parse_series(args.d, ring), parse_series(args.c, ring)
    gamma = parse_cut(args.gamma, ring.group)
    b1, b2 = split_quotient(d, c, args.k, gamma)
    nf = normalize_sum(b1, gamma)
    checks = {
        "summands_certified": b1.certified(gamma),
        "remainder_above": b2.above(gamma),
        "reassembles": quotient_reassembles(d, c, args.k, b1, b2, cfg.depth),
        "normal_form": not normal_form_violations(nf, gamma),
    }
    out = {
        "b1": [{"r": r, "a": a} for r, a in b1.summands],
        "b2": [{"num": n, "den": m} for n, m in b2.pieces],
        "normalized": [{"r": r, "a": a} for r, a in nf.summands],
        "checks": checks,
    }
    inputs = {"d": args.d, "c": args.c, "k": args.k, "gamma": gamma}
    return inputs, out, all(checks.values())


def cmd_as_q(args, ring, cfg):
    ring = example_field(args.p, args.example_depth, cfg)
    seq = partial_sums(ring, args.p, args.example_depth)
    ball = ball_of(seq)
    const = parse_series(args.const, ring)
    _, pb = artin_schreier_polys(ring, args.p, ball)
    coeffs = list(pb.coeffs)
    coeffs[0] = -const
    q, rep = artin_schreier_q(MinimalPolyInfo(coeffs, ball), seq, args.nu0, args.count)
    inputs = {"p": args.p, "depth": args.example_depth, "const": args.const, "nu0": args.nu0}
    return inputs, {"q": q, "ball": ball, "report": rep}, rep["pass"]


def cmd_example(args, ring, cfg):
    r = run_example(args.p, args.example_depth, args.nu0, args.count, cfg)
    ok_a, rep_a = r["criterion_a"]
    ok_b, rep_b = r["criterion_b"]
    rq = r["q_report"]
    checks = {
        "ball_is_0-": r["ball"] == r["ball_expected"],
        "mu_stream_is_0-": r["mu_stream"] == r["ball_expected"],
        "criterion_a_true": ok_a,
        "criterion_b_false": not ok_b,
        "witness_b0": bool(rep_b["witness"]) and rep_b["witness"]["k"] == 0,
        "q_trace_increasing": rq["increasing"],
        "q_matches_p": rq["equal"],
        "pc_sequence": r["pc"]["pass"],
    }
    out = {
        "ball": r["ball"],
        "mu_stream": r["mu_stream"],
        "pseudo_cauchy": r["pc"],
        "criterion_a": rep_a,
        "criterion_b": rep_b,
        "q": r["q"],
        "q_report": rq,
        "checks": checks,
    }
    inputs = {"p": args.p, "depth": args.example_depth, "nu0": args.nu0}
    return inputs, out, all(checks.values())


HANDLERS = {
    "eval": cmd_eval,
    "truncate": cmd_truncate,
    "mu": cmd_mu,
    "split": cmd_split,
    "cocycle-check": cmd_cocycle,
    "tower-check": cmd_tower,
    "cut": cmd_cut,
    "hensel": cmd_hensel,
    "quot-split": cmd_quot,
    "as-q": cmd_as_q,
    "example-wtoc": cmd_example,
}


# -- argument parsing -------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="Z", help='Z, Z^2lex, "Z[1/2]^8", "Q<1/2>"')
    common.add_argument("--field", default="Q", help="Q, F5, F2(y), PH(F2(y),4)")
    common.add_argument("--factor-set", default="trivial", help="trivial | derived:n=2,c=2 | table:<path>")
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--bound-monoid", type=int, default=None)
    common.add_argument("--horizon", type=int, default=None)
    common.add_argument("--timing", action="store_true", help="add wall time to the report")

    parser = argparse.ArgumentParser(prog="hahnfield", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    add("eval", help="parse and print a series").add_argument("expr")
    p = add("truncate", help="restrict a series to the left set of a cut")
    p.add_argument("expr")
    p.add_argument("--at", required=True)
    add("mu", help="the cut (supp x)+").add_argument("expr")
    p = add("split", help="x = x1 + x2 with x1 in A[L], v(x2) > L")
    p.add_argument("expr")
    p.add_argument("--at", required=True)
    p = add("cocycle-check", help="verify factor-set axioms on random triples")
    p.add_argument("--table", default=None)
    p.add_argument("--samples", type=int, default=1000)
    p = add("tower-check", help="check the tower axioms on random samples")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--corrupt", default=None, help="take complements at L + this element")
    p = add("cut", help="cut arithmetic")
    p.add_argument("op")
    p.add_argument("args", nargs="*")
    p = add("hensel", help="Newton lift of a simple residue root")
    p.add_argument("--poly", required=True, help='coefficients c0; c1; ... e.g. "-1-t; 0; 1"')
    p.add_argument("--root", required=True)
    p = add("quot-split", help="split d/c^k at a cut")
    p.add_argument("--d", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--gamma", required=True)
    for name, hlp in (("as-q", "q-polynomial for X^p - X - const"), ("example-wtoc", "the Artin-Schreier example")):
        p = add(name, help=hlp)
        p.add_argument("--p", type=int, default=2)
        p.add_argument("--example-depth", type=int, default=8)
        p.add_argument("--nu0", type=int, default=2)
        p.add_argument("--count", type=int, default=6)
        if name == "as-q":
            p.add_argument("--const", default="t^-1 + y")
    return parser


def _fix_example_depth(argv):
    # `--depth` after the example commands means the example's group depth
    argv = list(argv)
    if argv and argv[0] in ("as-q", "example-wtoc"):
        argv = ["--example-depth" if a == "--depth" else a for a in argv]
        argv = [a.replace("--depth=", "--example-depth=") if a.startswith("--depth=") else a for a in argv]
    return argv


def run(argv=None):
    """Run one command; returns (exit_code, report_text or None)."""
    argv = _fix_example_depth(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), None
    start = time.perf_counter()
    try:
        cfg = _config(args)
        ring = build_ring(args, cfg)
        inputs, outputs, ok = HANDLERS[args.command](args, ring, cfg)
        status = "pass" if ok else "fail"
        code = 0 if ok else 1
    except (HahnError, ValueError, ZeroDivisionError, TypeError, NotImplementedError, OSError, KeyError) as e:
        inputs, outputs = {"argv": argv}, {"error": f"{type(e).__name__}: {e}"}
        status, code = "error", 2
        cfg = DEFAULT if "cfg" not in locals() else cfg
    report = make_report(args.command, _options(args), inputs, outputs, status, cfg)
    if args.timing:
        report["runtime_s"] = f"{time.perf_counter() - start:.6f}"
    try:
        text = emit_report(report, args.out, cfg.depth)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2, None
    if code == 2:
        print(f"error: {outputs['error']}", file=sys.stderr)
    return code, text


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Vertex ids are 1-indexed on the command line, in weight files and in every
JSON report, matching the DIMACS files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import generators
from .dimacs import DimacsError, format_dimacs, parse_dimacs
from .estimator import (
    default_jobs,
    empirical_min_inclusion,
    estimate_inclusion,
    replica_uniforms,
    standard_error,
)
from .exact import (
    EnumerationBudgetError,
    PreconditionError,
    draw_verification_weights,
    exact_inclusion,
    verify_all_claims,
)
from .fractional import EnumerationCapError, fractional_chromatic_number
from .graph import (
    check_triangle_free,
    degeneracy_order,
    identity_order,
    local_triangle_bound,
    order_by_decreasing_degree,
)
from .process import run_process
from .theorems import (
    ALPHA,
    ConditionViolation,
    InfeasibleError,
    local_shearer_weights,
    main_weight,
    maingen_condition_check,
    maingen_driver,
    mainproc_check_and_bound,
    theorem_main_driver,
)

SCHEMA_VERSION = 1
EXACT_AUTO_LIMIT = 16


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x: float):
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _envelope(args, body: dict) -> dict:
    out = {"schemaVersion": SCHEMA_VERSION, "invocation": {"argv": args.argv, "seed": getattr(args, "seed", None)}}
    out.update(body)
    return out


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _emit_json(args, body: dict) -> None:
    _emit(args, json.dumps(_envelope(args, body), indent=2) + "\n")


def _load(path):
    try:
        if path in (None, "-"):
            return parse_dimacs(sys.stdin.read())
        with open(path) as fh:
            return parse_dimacs(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except DimacsError as exc:
        raise UsageError(f"bad DIMACS input: {exc}") from exc


def _ordered(g, how: str):
    if how == "degeneracy":
        return degeneracy_order(g)[0]
    if how == "degree":
        return order_by_decreasing_degree(g)
    return identity_order(g)


def _per_vertex_file(spec: str, n: int) -> np.ndarray:
    path = spec[1:]
    vals = np.full(n, np.nan)
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise UsageError(f"{path}:{lineno}: expected 'vertex value'")
                v = int(parts[0])
                if not 1 <= v <= n:
                    raise UsageError(f"{path}:{lineno}: vertex {v} outside 1..{n}")
                vals[v - 1] = float(parts[1])
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if np.isnan(vals).any():
        raise UsageError(f"{path}: no value for vertex {int(np.flatnonzero(np.isnan(vals))[0]) + 1}")
    return vals


def _weights(spec: str, g) -> np.ndarray:
    if spec == "auto":
        _, d = degeneracy_order(g)
        try:
            return np.full(g.n, main_weight(d))
        except PreconditionError as exc:
            raise UsageError(f"--w0 auto: {exc}") from exc
    if spec.startswith("@"):
        w = _per_vertex_file(spec, g.n)
    else:
        try:
            w = np.full(g.n, float(spec))
        except ValueError as exc:
            raise UsageError(f"--w0 must be a number, @file or auto, got {spec!r}") from exc
    if not np.all(np.isfinite(w) & (w > 0)):
        raise UsageError("initial weights must be finite and positive")
    return w


def _target(args, g) -> int:
    if not 1 <= args.target <= g.n:
        raise UsageError(f"--target must lie in 1..{g.n}")
    return args.target - 1


def _empirical(args, og, w0):
    report = estimate_inclusion(og, w0, args.samples, args.seed, args.jobs)
    v, est, lo = empirical_min_inclusion(report)
    se = standard_error(est, report.samples)
    return report, {
        "samples": report.samples,
        "seed": report.seed,
        "wallTime": report.wall_time,
        "minVertex": v + 1,
        "minEstimate": est,
        "minCiLow": lo,
        "minStandardError": se,
    }


def _check(name, passed, value, threshold):
    return {"name": name, "passed": bool(passed), "value": _num(value), "threshold": _num(threshold)}


# subcommands -------------------------------------------------------------

_FAMILIES = {
    "cycle": (generators.cycle, [int]),
    "path": (generators.path, [int]),
    "complete": (generators.complete, [int]),
    "empty": (generators.empty, [int]),
    "star": (generators.star, [int]),
    "complete-bipartite": (generators.complete_bipartite, [int, int]),
    "petersen": (generators.petersen, []),
    "grotzsch": (generators.grotzsch, []),
}


def cmd_gen(args):
    fam = args.family
    params = args.params
    comments = [f"generated by: {' '.join(args.argv)}"]
    try:
        if fam in _FAMILIES:
            fn, types = _FAMILIES[fam]
            if len(params) != len(types):
                raise UsageError(f"{fam} takes {len(types)} parameter(s)")
            g = fn(*(t(p) for t, p in zip(types, params)))
        elif fam == "mycielski":
            if len(params) != 1:
                raise UsageError("mycielski takes the iteration count (1 gives C5 from K2)")
            g = generators.complete(2)
            for _ in range(int(params[0])):
                g = generators.mycielski(g)
        elif fam == "random-bipartite":
            if len(params) != 3:
                raise UsageError("random-bipartite takes A B EDGE_PROB")
            g = generators.random_bipartite(int(params[0]), int(params[1]), float(params[2]), args.seed)
        elif fam == "random-bipartite-degeneracy":
            if len(params) != 2:
                raise UsageError("random-bipartite-degeneracy takes N D")
            g, p = generators.random_bipartite_with_degeneracy(int(params[0]), int(params[1]), args.seed)
            comments.append(f"edge probability {p!r}")
        elif fam == "random-triangle-free":
            if len(params) != 2:
                raise UsageError("random-triangle-free takes N TARGET_M")
            g, m = generators.random_triangle_free(int(params[0]), int(params[1]), args.seed)
            comments.append(f"requested {params[1]} edges, placed {m}")
        else:
            raise UsageError(f"unknown family {fam!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    comments.append(f"seed {args.seed}")
    _emit(args, format_dimacs(g, comments))
    return 0


def cmd_info(args):
    g = _load(args.file)
    og, d = degeneracy_order(g)
    tri = check_triangle_free(g)
    _emit_json(args, {
        "n": g.n,
        "m": g.m,
        "degeneracy": d,
        "triangleFree": tri is None,
        "triangle": None if tri is None else [v + 1 for v in tri],
        "localTriangleBound": local_triangle_bound(og),
        "maxDegree": max(g.degrees(), default=0),
    })
    return 0


def cmd_sample(args):
    g = _load(args.file)
    og = _ordered(g, args.ordering)
    w0 = _weights(args.w0, g)
    out = run_process(og, w0, uniforms=replica_uniforms(args.seed, 0, g.n).tolist())
    _emit_json(args, {
        "ordering": [v + 1 for v in og.order],
        "independentSet": sorted(v + 1 for v in out.independent_set),
        "choices": list(out.choices),
        "finalWeights": [_num(x) for x in out.final_weights],
    })
    return 0


def cmd_estimate(args):
    g = _load(args.file)
    og = _ordered(g, args.ordering)
    w0 = _weights(args.w0, g)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    report = estimate_inclusion(og, w0, args.samples, args.seed, args.jobs)
    if args.format == "csv":
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["vertex", "estimate", "ciLow", "ciHigh", "hits"])
        for v, e in enumerate(report.per_vertex):
            out.writerow([v + 1, f"{e.estimate:.17g}", f"{e.ci_low:.17g}", f"{e.ci_high:.17g}", e.hits])
        _emit(args, buf.getvalue())
        return 0
    body = report.to_dict()
    for row in body["perVertex"]:
        row["vertex"] += 1
    _emit_json(args, body)
    return 0


def cmd_exact(args):
    g = _load(args.file)
    og = _ordered(g, args.ordering)
    w0 = _weights(args.w0, g)
    through = None
    if args.target is not None:
        through = og.position[_target(args, g)] + 1
    report = exact_inclusion(og, w0, through=through, limit=args.limit)
    body = report.to_dict()
    body["perVertexInclusion"] = [_num(x) for x in body["perVertexInclusion"]]
    body["ordering"] = [v + 1 for v in og.order]
    if args.target is not None:
        body["target"] = args.target
        body["targetInclusion"] = report.per_vertex_inclusion[args.target - 1]
    _emit_json(args, body)
    return 0


def cmd_chif(args):
    g = _load(args.file)
    value, cert = fractional_chromatic_number(g, args.cap)
    d = cert.to_dict()
    for s in d["sets"]:
        s["vertices"] = [v + 1 for v in s["vertices"]]
    _emit_json(args, {"value": d["value"], "valueFloat": float(value), "certificate": d})
    return 0


def _finish(args, theorem, parameters, per_vertex, checks, empirical=None):
    passed = all(c["passed"] for c in checks)
    body = {
        "theorem": theorem,
        "parameters": parameters,
        "perVertex": per_vertex,
        "checks": checks,
        "passed": passed,
    }
    if empirical is not None:
        body["empirical"] = empirical
    _emit_json(args, body)
    return 0 if passed else 1


def cmd_verify_mainproc(args):
    g = _load(args.file)
    og = _ordered(g, args.ordering)
    w0 = _weights(args.w0, g)
    k = _target(args, g)
    inst = mainproc_check_and_bound(og, w0, k, args.epsilon)
    checks = [_check("condition", inst.valid, inst.condition_lhs, inst.epsilon)]
    per_vertex = [{"vertex": k + 1, "w0": float(w0[k]), "bound": inst.bound, "conditionLHS": _num(inst.condition_lhs)}]
    if g.n <= EXACT_AUTO_LIMIT:
        p = exact_inclusion(og, w0, through=og.position[k] + 1).per_vertex_inclusion[k]
        per_vertex[0]["exactInclusion"] = p
        checks.append(_check("exactInclusionAtLeastBound", p >= inst.bound, p, inst.bound))
    empirical = None
    if args.samples:
        report, empirical = _empirical(args, og, w0)
        e = report.per_vertex[k]
        upper = e.estimate + 3 * standard_error(e.estimate, report.samples)
        empirical["targetEstimate"] = e.estimate
        checks.append(_check("empiricalPlus3SEAtLeastBound", upper >= inst.bound, upper, inst.bound))
    params = {"epsilon": args.epsilon, "target": k + 1, "ordering": args.ordering}
    return _finish(args, "mainproc", params, per_vertex, checks, empirical)


def cmd_verify_main(args):
    g = _load(args.file)
    res = theorem_main_driver(g)
    og = res.ordered_graph
    checks = [_check("conditionAllVertices", res.conditions_hold, float(res.condition_lhs.max(initial=0.0)), res.epsilon)]
    per_vertex = [
        {"vertex": v + 1, "leftDegree": len(og.left[v]), "conditionLHS": float(res.condition_lhs[v]), "bound": res.bound}
        for v in range(g.n)
    ]
    if g.n <= EXACT_AUTO_LIMIT:
        exact = exact_inclusion(og, np.full(g.n, res.w0)).per_vertex_inclusion
        for row, p in zip(per_vertex, exact):
            row["exactInclusion"] = p
        checks.append(_check("exactMinAtLeastBound", min(exact) >= res.bound, min(exact), res.bound))
    empirical = None
    if args.samples:
        report, empirical = _empirical(args, og, np.full(g.n, res.w0))
        upper = empirical["minEstimate"] + 3 * empirical["minStandardError"]
        empirical["empiricalChiFUpperBound"] = 1.0 / empirical["minCiLow"] if empirical["minCiLow"] > 0 else None
        checks.append(_check("empiricalMinPlus3SEAtLeastBound", upper >= res.bound, upper, res.bound))
    params = res.to_dict()
    return _finish(args, "main", params, per_vertex, checks, empirical)


def _maingen_p(args, g, og):
    if args.p == "shearer":
        try:
            og, p, c = local_shearer_weights(g, args.c)
        except (InfeasibleError, PreconditionError) as exc:
            raise VerificationFailed(str(exc)) from exc
        return og, p, {"shearerConstant": c}
    if args.p.startswith("@"):
        p = _per_vertex_file(args.p, g.n)
    else:
        try:
            p = np.full(g.n, float(args.p))
        except ValueError as exc:
            raise UsageError(f"--p must be a number, @file or shearer, got {args.p!r}") from exc
    if np.any((p < 0) | (p > 1)):
        raise UsageError("--p values must lie in [0, 1]")
    return og, p, {}


def cmd_verify_maingen(args):
    g = _load(args.file)
    tri = check_triangle_free(g)
    if tri is not None:
        raise VerificationFailed(f"graph has a triangle {[v + 1 for v in tri]}")
    og, p, extra = _maingen_p(args, g, _ordered(g, args.ordering))
    rows = maingen_condition_check(og, p, args.shrink)
    per_vertex = [{"vertex": v + 1, "p": r.lhs, "product": r.rhs, "ok": r.ok} for v, r in enumerate(rows)]
    checks = [_check("productCondition", all(r.ok for r in rows), max((r.lhs - r.rhs for r in rows), default=0.0), 0.0)]
    params = {"ordering": args.ordering, "alpha": ALPHA, "epsilon": 0.5, "shrink": args.shrink, **extra}
    if not checks[0]["passed"]:
        return _finish(args, "maingen", params, per_vertex, checks)
    res = maingen_driver(og, p, args.shrink)
    for row, b, c in zip(per_vertex, res.per_vertex_bound, res.condition_lhs):
        row["bound"] = float(b)
        row["conditionLHS"] = float(c)
    checks.append(_check("mainprocCondition", bool(np.all(res.condition_lhs <= 0.5)), float(res.condition_lhs.max(initial=0.0)), 0.5))
    if g.n <= EXACT_AUTO_LIMIT:
        exact = np.array(exact_inclusion(og, res.w0).per_vertex_inclusion)
        for row, x in zip(per_vertex, exact):
            row["exactInclusion"] = float(x)
        gap = float(np.min(exact - res.per_vertex_bound))
        checks.append(_check("exactAtLeastBound", gap >= 0, gap, 0.0))
    empirical = None
    if args.samples:
        report, empirical = _empirical(args, og, res.w0)
        est = report.estimates
        upper = est + 3 * report.standard_errors()
        gap = float(np.min(upper - res.per_vertex_bound))
        checks.append(_check("empiricalPlus3SEAtLeastBound", gap >= 0, gap, 0.0))
    return _finish(args, "maingen", params, per_vertex, checks, empirical)


def cmd_verify_claims(args):
    g = _load(args.file)
    og = _ordered(g, args.ordering)
    rng = np.random.default_rng(args.seed)
    worst = {"procrel": 0.0, "martingale": 0.0, "EX": 0.0, "finalweight": 0.0, "vkinI": 0.0}
    triangle_free = check_triangle_free(g) is None
    per_vertex = []
    for _ in range(args.draws):
        w0 = draw_verification_weights(g.n, rng)
        for v in range(g.n):
            dev = verify_all_claims(og, w0, v)
            per_vertex.append({"vertex": v + 1, **{k: _num(x) for k, x in dev.items()}})
            for k, x in dev.items():
                if not math.isnan(x):
                    worst[k] = max(worst[k], x)
    checks = [
        _check(k, x <= args.tolerance, x, args.tolerance)
        for k, x in worst.items()
        if triangle_free or k not in ("martingale", "EX")
    ]
    params = {"draws": args.draws, "tolerance": args.tolerance, "ordering": args.ordering, "triangleFree": triangle_free}
    return _finish(args, "claims", params, per_vertex, checks)


SWEEP_COLUMNS = [
    "d", "degeneracy", "n", "m", "w0", "epsilon", "bound",
    "empiricalMin", "ciLow", "chiFUpperBound", "empiricalChiFUpperBound",
]


def cmd_sweep(args):
    if args.family != "random-bipartite":
        raise UsageError(f"unsupported family {args.family!r}")
    try:
        ds = [int(x) for x in args.d.split(",") if x]
    except ValueError as exc:
        raise UsageError(f"--d must be a comma-separated list of integers, got {args.d!r}") from exc
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(SWEEP_COLUMNS)
    for i, d in enumerate(ds):
        if d < 3:
            raise UsageError("every --d value must be at least 3")
        try:
            g, _ = generators.random_bipartite_with_degeneracy(args.n, d, args.seed + i)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        res = theorem_main_driver(g)
        report = estimate_inclusion(res.ordered_graph, np.full(g.n, res.w0), args.samples, args.seed + i, args.jobs)
        _, est, lo = empirical_min_inclusion(report)
        emp_chi = 1.0 / lo if lo > 0 else math.inf
        row = [d, res.degeneracy, g.n, g.m, res.w0, res.epsilon, res.bound, est, lo, res.chi_f_upper_bound, emp_chi]
        out.writerow([x if isinstance(x, int) else f"{x:.17g}" for x in row])
    _emit(args, buf.getvalue())
    return 0


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trifree", description="Random independent sets in triangle-free graphs and fractional colouring certificates.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, seed=False, output=True, ordering=False):
        if output:
            sp.add_argument("-o", "--output", help="write here instead of stdout")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if ordering:
            sp.add_argument("--ordering", choices=["degeneracy", "degree", "identity"], default="degeneracy")

    def jobs(sp):
        sp.add_argument("--jobs", type=int, default=None, help="worker threads (default: $TRIFREE_JOBS or 1)")

    g = sub.add_parser("gen", help="generate a graph in DIMACS format")
    g.add_argument("family")
    g.add_argument("params", nargs="*")
    common(g, seed=True)
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("info", help="size, degeneracy and triangle statistics")
    i.add_argument("file", nargs="?", default="-")
    common(i)
    i.set_defaults(func=cmd_info)

    s = sub.add_parser("sample", help="one run of the weight process")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--w0", default="auto")
    common(s, seed=True, ordering=True)
    s.set_defaults(func=cmd_sample)

    e = sub.add_parser("estimate", help="Monte Carlo inclusion probabilities")
    e.add_argument("file", nargs="?", default="-")
    e.add_argument("--w0", default="auto")
    e.add_argument("--samples", type=int, default=100_000)
    e.add_argument("--format", choices=["json", "csv"], default="json")
    common(e, seed=True, ordering=True)
    jobs(e)
    e.set_defaults(func=cmd_estimate)

    x = sub.add_parser("exact", help="exact inclusion probabilities by enumeration")
    x.add_argument("file", nargs="?", default="-")
    x.add_argument("--w0", default="auto")
    x.add_argument("--target", type=int, default=None)
    x.add_argument("--limit", type=int, default=20)
    common(x, ordering=True)
    x.set_defaults(func=cmd_exact)

    c = sub.add_parser("chif", help="exact fractional chromatic number")
    c.add_argument("file", nargs="?", default="-")
    c.add_argument("--cap", type=int, default=10**6)
    common(c)
    c.set_defaults(func=cmd_chif)

    v = sub.add_parser("verify", help="check a guarantee and emit a certificate")
    vsub = v.add_subparsers(dest="theorem", parser_class=_Parser)
    vsub.required = True

    vp = vsub.add_parser("mainproc")
    vp.add_argument("file", nargs="?", default="-")
    vp.add_argument("--w0", default="auto")
    vp.add_argument("--target", type=int, required=True)
    vp.add_argument("--epsilon", type=float, required=True)
    vp.add_argument("--samples", type=int, default=0)
    common(vp, seed=True, ordering=True)
    jobs(vp)
    vp.set_defaults(func=cmd_verify_mainproc)

    vm = vsub.add_parser("main")
    vm.add_argument("file", nargs="?", default="-")
    vm.add_argument("--samples", type=int, default=0)
    common(vm, seed=True)
    jobs(vm)
    vm.set_defaults(func=cmd_verify_main)

    vg = vsub.add_parser("maingen")
    vg.add_argument("file", nargs="?", default="-")
    vg.add_argument("--p", default="shearer", help="constant, @file, or 'shearer' for c ln d(v)/d(v)")
    vg.add_argument("--c", type=float, default=0.5)
    vg.add_argument("--shrink", type=float, default=1.0)
    vg.add_argument("--samples", type=int, default=0)
    common(vg, seed=True)
    vg.add_argument("--ordering", choices=["degeneracy", "degree", "identity"], default="degree")
    jobs(vg)
    vg.set_defaults(func=cmd_verify_maingen)

    vc = vsub.add_parser("claims")
    vc.add_argument("file", nargs="?", default="-")
    vc.add_argument("--draws", type=int, default=1)
    vc.add_argument("--tolerance", type=float, default=1e-10)
    common(vc, seed=True, ordering=True)
    vc.set_defaults(func=cmd_verify_claims)

    sw = sub.add_parser("sweep", help="bound versus empirical inclusion across degeneracies")
    sw.add_argument("theorem", choices=["main"])
    sw.add_argument("--d", default="8,16,32,64")
    sw.add_argument("--family", default="random-bipartite")
    sw.add_argument("--n", type=int, default=400)
    sw.add_argument("--samples", type=int, default=100_000)
    common(sw, seed=True)
    jobs(sw)
    sw.set_defaults(func=cmd_sweep)
    return p


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        args.argv = ["trifree", *argv]
        if getattr(args, "jobs", None) is None and hasattr(args, "jobs"):
            args.jobs = default_jobs()
        return args.func(args)
    except UsageError as exc:
        return _fail(2, "usage", str(exc))
    except (EnumerationBudgetError, EnumerationCapError) as exc:
        return _fail(2, "budget", str(exc))
    except (VerificationFailed, PreconditionError, ConditionViolation) as exc:
        return _fail(1, "verification", str(exc))


if __name__ == "__main__":
    sys.exit(main())

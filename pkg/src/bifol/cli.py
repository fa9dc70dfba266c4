"""Command line interface: validation, generation, graphs, distances,
bottleneck certification, wall metrics, lozenge detection, isometry
classification, WPD scans, censuses and exports.

Exit codes: 0 success, 1 usage, 2 validation failure, 3 property-check
failure, 4 budget exceeded.  Reports are JSON, deterministic for fixed
inputs and seed (the environment stamp carries only the seed and window
sizes, never wall-clock data).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import census as cs
from . import dynamics as dy
from . import graphs as gr
from . import io as bio
from . import walls as wl
from .pattern import BifolError, InvalidPatternError
from .periodic import PeriodicPattern, generate

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_PROPERTY, EXIT_BUDGET = 0, 1, 2, 3, 4

CHECK_TAGS = (
    "bottleneck-k3",
    "graph-inclusion-qi",
    "wall-metric-qi",
    "metric-axioms",
    "interval-decomposition",
    "block-distance-bounds",
    "projection-overlap-bounds",
    "isometry-classification",
    "census-trivial",
    "census-skew",
    "determinism",
)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _report(verb, inputs, results, checks=None, seed=None, windows=None):
    return {
        "verb": verb,
        "inputs": inputs,
        "results": results,
        "checks": checks or {},
        "env": {"seed": seed, "windows": windows},
    }


def _emit(args, report) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return bio.parse_pattern_text(text), _digest(text)


def _finite(p, args):
    if isinstance(p, PeriodicPattern):
        lo, hi = args.window
        return p.materialize_window(lo, hi)
    return p


def cmd_validate(args):
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        bio.parse_pattern_text(text)
    except InvalidPatternError as e:
        _emit(args, _report("validate", _digest(text), {"valid": False,
                                                        "violations": str(e)}))
        return EXIT_VALIDATION
    _emit(args, _report("validate", _digest(text), {"valid": True}))
    return EXIT_OK


def cmd_gen(args):
    params = [int(x) for x in args.params]
    p = generate(args.kind, *params)
    if isinstance(p, PeriodicPattern) and args.materialize:
        lo, hi = args.window
        p = p.materialize_window(lo, hi)
    bio.write_pattern(p, args.out)
    _emit(args, _report("gen", args.kind, {"out": args.out,
                                           "kind": type(p).__name__}))
    return EXIT_OK


def cmd_graph(args):
    p, dig = _load(args.input)
    fp = _finite(p, args)
    G = gr.build_graph(fp, args.kind)
    results = {"kind": G.kind, "vertices": len(G.vertices),
               "edges": len(G.edges()),
               "components": len(gr.connected_components(G))}
    if args.dot:
        bio.export_dot(fp, G, args.dot)
        results["dot"] = args.dot
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(bio.distance_matrix_csv(G, gr.distances_from))
        results["csv"] = args.csv
    _emit(args, _report("graph", dig, results, windows=args.window))
    return EXIT_OK


def cmd_dist(args):
    p, dig = _load(args.input)
    results = {"from": args.src, "to": args.dst}
    if isinstance(p, PeriodicPattern):
        lo, hi = args.window
        d, stable = gr.windowed_distance(p, args.kind, args.src, args.dst,
                                         (min(lo, -2), max(hi, 2)))
        results["stable_under_doubling"] = stable
    else:
        d = gr.distance(gr.build_graph(p, args.kind), args.src, args.dst)
    results["distance"] = "inf" if d == gr.INF else d
    _emit(args, _report("dist", dig, results, windows=args.window))
    return EXIT_OK


def cmd_bottleneck(args):
    p, dig = _load(args.input)
    fp = _finite(p, args)
    kinds = [args.kind] if args.kind else ["xplus", "xminus", "gammaplus",
                                           "gammaminus"]
    results, ok = {}, True
    for kind in kinds:
        res = gr.bottleneck_certify_components(gr.build_graph(fp, kind), args.K)
        results[kind] = {"passed": res.passed, "pairs": res.pairs_checked,
                         "witness": (None if res.witness is None else
                                     [res.witness.x, res.witness.y,
                                      res.witness.midpoint])}
        ok = ok and res.passed
    _emit(args, _report("bottleneck", dig, results,
                        checks={"bottleneck-k3": ok}, windows=args.window))
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_metric(args):
    p, dig = _load(args.input)
    fp = _finite(p, args)
    results = {"kind": args.kind}
    if not args.all_pairs and not args.points:
        sys.stderr.write("metric: need --points a,b or --all-pairs FILE\n")
        return EXIT_USAGE
    if args.all_pairs:
        pts = sorted(fp.points)
        lines = ["point," + ",".join(pts)]
        witnesses = {}
        for a in pts:
            row = [a]
            for b in pts:
                row.append(str(wl.wall_distance(fp, a, b, args.kind)))
                if a < b:
                    wit = wl.longest_chain_witness(fp, a, b, args.kind)
                    witnesses[f"{a},{b}"] = list(wit.leaves)
            lines.append(",".join(row))
        with open(args.all_pairs, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        results["csv"] = args.all_pairs
        results["witnesses"] = witnesses
    else:
        a, b = args.points.split(",")
        results["points"] = [a, b]
        results["distance"] = wl.wall_distance(fp, a, b, args.kind)
        wit = wl.longest_chain_witness(fp, a, b, args.kind)
        results["witness"] = list(wit.leaves)
    _emit(args, _report("metric", dig, results))
    return EXIT_OK


def cmd_lozenges(args):
    p, dig = _load(args.input)
    fp = _finite(p, args)
    rep = fp.detect_lozenges()
    flag = any(rep.chain_quadrant_flags)
    _emit(args, _report("lozenges", dig, {
        "lozenges": [[L.plus1, L.minus1, L.plus2, L.minus2]
                     for L in rep.lozenges],
        "chains": [list(c) for c in rep.chains],
        "corners": sorted(sorted(c) for c in rep.corners),
        "quadrant_flags": list(rep.chain_quadrant_flags),
    }, checks={"chain-quadrant-spread": not flag}))
    return EXIT_OK if not flag else EXIT_PROPERTY


def cmd_classify(args):
    p, dig = _load(args.pattern)
    if not isinstance(p, PeriodicPattern):
        raise BifolError("classification needs a periodic pattern")
    g = p.automorphisms[args.element]
    verdict = dy.classify_isometry(p, g, window=args.window_size,
                                   nmax=args.nmax)
    results = {"element": args.element, "verdict": verdict.kind}
    if isinstance(verdict, dy.Elliptic):
        results["certificate"] = verdict.certificate
        results["detail"] = verdict.detail
    elif isinstance(verdict, dy.Loxodromic):
        results["tau"] = [verdict.tau_lower, verdict.tau_upper]
        results["displacements"] = list(verdict.displacements)
    else:
        results["reason"] = verdict.reason
    ok = verdict.kind != "inconclusive"
    _emit(args, _report("classify", dig, results,
                        checks={"isometry-classification": ok},
                        windows=[args.window_size]))
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_wpd(args):
    p, dig = _load(args.pattern)
    if not isinstance(p, PeriodicPattern):
        raise BifolError("WPD scans need a periodic pattern")
    g = p.automorphisms[args.g]
    base = args.base or p.leaf_of_index("plus", 0)
    scan = dy.wpd_scan(p, g, base, args.eps, args.n, p.automorphisms,
                       radius=args.ball, window=args.window_size)
    _emit(args, _report("wpd", dig, {
        "witnesses": list(scan.witnesses), "stable": scan.stable,
        "eps": scan.eps, "n": scan.n,
        "block_constraint_ok": scan.block_constraint_ok,
    }, windows=[args.window_size]))
    return EXIT_OK


def _load_gens(args):
    """Optional generator file: {"A": {"k": 1, "v": [0, 0]}, ...} for the
    affine model, {"s": [1, 1], ...} offset vectors for the integer-map one.
    """
    if not args.gens:
        return None
    with open(args.gens, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if args.model == "trivial":
        gens = {nm: cs.AffineElement(g["k"], tuple(g["v"]))
                for nm, g in data.items()}
        return cs.GeneratingSet(cs.TRIVIAL_AFFINE, gens)
    gens = {nm: cs.IndexMap(offsets) for nm, offsets in data.items()}
    return cs.GeneratingSet(cs.SKEW_INTMAP, gens)


def cmd_census(args):
    if args.model == "trivial":
        S = _load_gens(args) or cs.trivial_affine_gens()
        rep = cs.growth_report(S, args.nmax)
        results = {"model": S.model, "balls": list(rep.stats.ball),
                   "free": list(rep.stats.free),
                   "checks": rep.checks,
                   "loglog_slope_free": rep.loglog_slope_free,
                   "loglog_slope_intrinsic": rep.loglog_slope_intrinsic}
        ok = rep.ok
        tag = "census-trivial"
        stats = rep.stats
    else:
        S = _load_gens(args) or cs.skew_intmap_gens()
        h = (cs.IndexMap([int(x) for x in args.h.split(",")])
             if args.h else cs.skew_designated_shift())
        gen_rep = cs.genericity_report(S, h, args.nmax)
        results = {"model": S.model, "R": gen_rep.R, "K": gen_rep.K,
                   "L": gen_rep.L, "dichotomy": gen_rep.dichotomy_ok,
                   "fraction_bound": gen_rep.fraction_bound_ok,
                   "fractions": list(gen_rep.fractions)}
        ok = gen_rep.ok
        tag = "census-skew"
        stats = cs.ball_stats(S, args.nmax)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(bio.census_csv(stats))
        results["csv"] = args.csv
    _emit(args, _report("census", args.model, results, checks={tag: ok},
                        seed=args.seed))
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_export(args):
    p, dig = _load(args.input)
    fp = _finite(p, args)
    G = gr.build_graph(fp, args.kind)
    text = bio.export_dot(fp, G, args.dot)
    _emit(args, _report("export", dig, {"dot": args.dot,
                                        "bytes": len(text)}))
    return EXIT_OK


def _add_window(sp):
    sp.add_argument("--window", nargs=2, type=int, default=(0, 6),
                    metavar=("LO", "HI"),
                    help="materialization window for periodic inputs")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bifol",
        description="combinatorial bifoliated planes: graphs, metrics, "
                    "classification, censuses")
    ap.add_argument("--report", help="write the JSON report here")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("validate");  sp.add_argument("--in", dest="input", required=True)
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("gen")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--params", nargs="*", default=())
    sp.add_argument("--out", required=True)
    sp.add_argument("--materialize", action="store_true")
    _add_window(sp)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("graph")
    sp.add_argument("--kind", required=True, choices=gr.KINDS)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--dot")
    sp.add_argument("--csv")
    _add_window(sp)
    sp.set_defaults(fn=cmd_graph)

    sp = sub.add_parser("dist")
    sp.add_argument("--kind", required=True, choices=gr.KINDS)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="dst", required=True)
    _add_window(sp)
    sp.set_defaults(fn=cmd_dist)

    sp = sub.add_parser("bottleneck")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--K", type=int, default=3)
    sp.add_argument("--kind", choices=gr.KINDS)
    _add_window(sp)
    sp.set_defaults(fn=cmd_bottleneck)

    sp = sub.add_parser("metric")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--kind", required=True, choices=wl.KINDS)
    sp.add_argument("--points", help="a,b")
    sp.add_argument("--all-pairs", dest="all_pairs",
                    help="write the all-pairs matrix over marked points here")
    _add_window(sp)
    sp.set_defaults(fn=cmd_metric)

    sp = sub.add_parser("lozenges")
    sp.add_argument("--in", dest="input", required=True)
    _add_window(sp)
    sp.set_defaults(fn=cmd_lozenges)

    sp = sub.add_parser("classify")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--element", required=True)
    sp.add_argument("--window", dest="window_size", type=int, default=8)
    sp.add_argument("--nmax", type=int, default=8)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("wpd")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--ball", type=int, default=4)
    sp.add_argument("--eps", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--base")
    sp.add_argument("--window", dest="window_size", type=int, default=8)
    sp.set_defaults(fn=cmd_wpd)

    sp = sub.add_parser("census")
    sp.add_argument("--model", required=True, choices=("trivial", "skew"))
    sp.add_argument("--nmax", type=int, default=8)
    sp.add_argument("--gens", help="JSON file with named generators")
    sp.add_argument("--h", help="designated shift offsets, e.g. 3,3")
    sp.add_argument("--csv")
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("export")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--kind", default="xplus", choices=gr.KINDS)
    sp.add_argument("--dot", required=True)
    _add_window(sp)
    sp.set_defaults(fn=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InvalidPatternError as e:
        sys.stderr.write(f"validation error: {e}\n")
        return EXIT_VALIDATION
    except cs.BudgetExceededError as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except bio.ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_VALIDATION
    except BifolError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())

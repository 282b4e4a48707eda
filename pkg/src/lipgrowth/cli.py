"""Command-line front end.

Every subcommand emits a machine-readable report (JSON by default, CSV or an
aligned table on request).  All randomness flows from --seed (default 0), so
default runs are reproducible; --deterministic additionally drops timing
fields, making repeated runs byte-identical.

Exit codes: 0 success, 2 usage error, 3 resource limit, 4 non-convergence.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from datetime import datetime, timezone

from . import continuum, counting, graphs, randomlab, strips
from .errors import ConvergenceError, ResourceLimitError

SCHEMA = 1

_ABSTRACT_REFERENCES = {
    "alpha": "1.16234",
    "alpha_sq": "1.351",
    "alpha_sqrt2": "1.6438",
    "beta": "1.554",
    "zeta": "1.4895",
    "psi": "1.553",
}

_EQUATIONS = {
    "alpha": "largest x with tan(1/x) = x",
    "alpha_sq": "alpha^2",
    "alpha_sqrt2": "alpha*sqrt(2)",
    "beta": "1/r, cos r + 2 sin r = 2 (r = arctan 3/4)",
    "zeta": "sqrt(top eigenvalue), pinned two-row kernel",
    "psi": "cbrt(top eigenvalue), offset three-row kernel",
    "nystrom_band": "top eigenvalue, indicator kernel |x-t|<=1",
    "nystrom_tent": "top eigenvalue, kernel 2-|x-t| (= 2 alpha^2)",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lipgrowth",
        description="Count h-Lipschitz integer functions on graphs and "
                    "compute their growth constants.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all randomness (default 0)")
    common.add_argument("--format", choices=["json", "csv", "table"],
                        default=None,
                        help="output format (default: json; table for constants)")
    common.add_argument("--deterministic", action="store_true",
                        help="suppress timestamp/elapsed fields for "
                             "byte-identical runs")
    common.add_argument("--threads", type=int, default=1,
                        help="worker hint; results are independent of it")
    common.add_argument("--out", type=str, default=None,
                        help="also write the JSON payload to this file")
    sub = p.add_subparsers(dest="command", required=True)

    def add_graph_args(sp, for_generate=False):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--family",
                       choices=["path", "cycle", "complete", "star", "tree"])
        g.add_argument("--grid", metavar="MxN")
        g.add_argument("--er", nargs=2, metavar=("N", "D"))
        if not for_generate:
            g.add_argument("--load", metavar="FILE")
        sp.add_argument("--n", type=int, help="size for --family")

    sp = sub.add_parser("generate", parents=[common], help="write a graph as edge-list text")
    add_graph_args(sp, for_generate=True)

    sp = sub.add_parser(
        "count", parents=[common], help="exact h-Lipschitz function count",
        epilog="Record fields: graph_hash, h, count (decimal string), "
               "node_expansions, method, elapsed (dropped under "
               "--deterministic).")
    add_graph_args(sp)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--method", choices=["auto", "brute", "closed", "strip"],
                    default="auto")
    sp.add_argument("--budget", type=int, default=counting.DEFAULT_BUDGET)

    sp = sub.add_parser("ehrhart", parents=[common], help="fit the counting polynomial")
    add_graph_args(sp)
    sp.add_argument("--budget", type=int, default=counting.DEFAULT_BUDGET)

    sp = sub.add_parser(
        "strip", parents=[common], help="transfer-operator spectra",
        epilog="CSV columns: kind, m, h, lambda, normalized, residual, "
               "iterations; with three or more h values the JSON payload "
               "adds the extrapolated h->infinity limit and its 1/h slope.")
    sp.add_argument("--kind", required=True,
                    choices=["band", "tent", "free-strip", "pinned-strip"])
    sp.add_argument("--m", type=int, default=None, help="rows (free/pinned strips)")
    sp.add_argument("--h", type=int, nargs="+", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=10**5)

    sp = sub.add_parser("constants", parents=[common], help="solve for the growth constants")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--mesh-1d", type=int, default=2000)
    sp.add_argument("--mesh-zeta", type=int, default=64)
    sp.add_argument("--mesh-psi", type=int, default=32)

    sp = sub.add_parser(
        "bounds", parents=[common], help="random-graph bound expressions",
        epilog="CSV columns: d, lower_exact, lower_asymptotic, upper_exact, "
               "upper_asymptotic, lower_valid, upper_valid, "
               "upper_exact_below_two, pair_margin, giant_fraction.")
    sp.add_argument("--d", type=float, nargs="+", required=True)

    sp = sub.add_parser(
        "random-lab", parents=[common], help="Monte-Carlo experiments",
        epilog="CSV columns by mode -- lll: mode, n, d, h, trials, successes, "
               "estimate, ci_low, ci_high, edge_failure_rate, seed; giant: "
               "mode, n, d, seed, components, giant_fraction, predicted; "
               "pairs: mode, n, d, size, seed, found, definitive.  A search "
               "that finds nothing still exits 0: absence is data.")
    sp.add_argument("--mode", choices=["lll", "giant", "pairs"], required=True)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--d", type=float, default=5.0)
    sp.add_argument("--h", type=int, default=100)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--size", type=int, default=None, help="set size for pairs mode")

    sub.add_parser("reproduce-abstract", parents=[common],
                   help="full pipeline for the headline constants table")
    return p


def _build_graph(args) -> graphs.Graph:
    if args.family:
        if args.n is None:
            raise ValueError("--family needs --n")
        kind = "path" if args.family == "tree" else args.family
        return graphs.make_family(kind, args.n)
    if args.grid:
        try:
            m, n = (int(x) for x in args.grid.lower().split("x"))
        except Exception as exc:
            raise ValueError(f"bad --grid {args.grid!r}, expected MxN") from exc
        return graphs.make_grid(m, n)
    if args.er:
        return graphs.sample_er(int(args.er[0]), float(args.er[1]), args.seed)
    if getattr(args, "load", None):
        return graphs.read_edgelist(args.load)
    raise ValueError("no graph specified")


def _cmd_generate(args):
    return {"text": graphs.to_edgelist_str(_build_graph(args))}


def _cmd_count(args):
    g = _build_graph(args)
    t0 = time.perf_counter()
    method = args.method
    if method in ("auto", "brute"):
        value, expansions = counting.count_with_stats(g, args.h, args.budget)
        method = "brute"
    elif method == "closed":
        if args.family in ("tree", "path", "star"):
            value = counting.count_closed_form("tree", g.n, args.h)
        elif args.family == "complete":
            value = counting.count_closed_form("complete", g.n, args.h)
        else:
            raise ValueError("--method closed needs a tree or complete family")
        expansions = 0
    else:  # strip
        if not args.grid:
            raise ValueError("--method strip needs --grid")
        m = int(args.grid.lower().split("x")[0])
        n = int(args.grid.lower().split("x")[1])
        value = strips.strip_count_exact(m, n, args.h)
        expansions = 0
    elapsed = time.perf_counter() - t0
    rec = {"graph_hash": graphs.graph_hash(g), "h": args.h,
           "count": str(value), "node_expansions": expansions,
           "method": method}
    if not args.deterministic:
        rec["elapsed"] = elapsed
    return {"records": [rec]}


def _cmd_ehrhart(args):
    g = _build_graph(args)
    counts = counting.counts_for_fit(g, args.budget)
    fit = counting.ehrhart_fit(g, counts)
    return {"records": [{
        "graph_hash": graphs.graph_hash(g),
        "nodes": [h for h, _ in counts],
        "counts": [str(c) for _, c in counts],
        "coefficients": [str(c) for c in fit.coeffs],
        "leading": str(fit.leading),
        "degree": fit.degree,
        "c_estimate": fit.c_estimate,
    }]}


def _cmd_strip(args):
    records = []
    pairs = []
    for h in args.h:
        op = strips.make_operator(args.kind, h, args.m)
        est = strips.top_eigenvalue(op, args.tol, args.max_iter)
        pairs.append((h, est.normalized))
        records.append({"kind": est.kind, "m": est.m, "h": h,
                        "lambda": est.eigenvalue, "normalized": est.normalized,
                        "residual": est.residual, "iterations": est.iterations})
    payload = {"records": records}
    if len(pairs) >= 3:
        fit = strips.extrapolate_limit(pairs)
        payload["extrapolated"] = {"limit": fit.limit, "slope": fit.slope,
                                   "curvature": fit.curvature}
    return payload


def _constants_records(mesh_1d, mesh_zeta, mesh_psi):
    alpha = continuum.solve_alpha()
    beta = continuum.solve_beta()
    band = continuum.nystrom_top("band-indicator", mesh_1d)
    tent = continuum.nystrom_top("tent", mesh_1d)
    zeta = continuum.solve_zeta(mesh_zeta)
    psi = continuum.solve_psi(mesh_psi)
    rows = [
        ("alpha", alpha, ""),
        ("alpha_sq", alpha ** 2, ""),
        ("alpha_sqrt2", alpha * math.sqrt(2), ""),
        ("beta", beta, ""),
        ("nystrom_band", band.eigenvalue, f"N={mesh_1d}, iters={band.iterations}"),
        ("nystrom_tent", tent.eigenvalue, f"N={mesh_1d}, iters={tent.iterations}"),
        ("zeta", zeta, f"N={mesh_zeta}"),
        ("psi", psi, f"N={mesh_psi}"),
    ]
    return [{"name": name, "value": value,
             "reference": _ABSTRACT_REFERENCES.get(name, ""),
             "equation": _EQUATIONS.get(name, ""),
             "metadata": meta} for name, value, meta in rows]


def _cmd_constants(args):
    return {"records": _constants_records(args.mesh_1d, args.mesh_zeta,
                                          args.mesh_psi)}


def _cmd_bounds(args):
    records = []
    for d in args.d:
        rep = randomlab.bound_report(d)
        rec = {"d": d,
               "lower_exact": rep.lower_exact,
               "lower_asymptotic": rep.lower_asymptotic,
               "upper_exact": rep.upper_exact,
               "upper_asymptotic": rep.upper_asymptotic,
               "lower_valid": rep.lower_valid,
               "upper_valid": rep.upper_valid,
               "upper_exact_below_two": rep.upper_exact_below_two}
        rec["pair_margin"] = (randomlab.independent_pair_margin(d).margin
                              if d >= 9 else None)
        rec["giant_fraction"] = (randomlab.giant_fraction_prediction(d)
                                 if d > 1 else None)
        records.append(rec)
    return {"records": records}


def _cmd_random_lab(args):
    if args.mode == "lll":
        g = graphs.sample_er(args.n, args.d, args.seed)
        cfg = randomlab.LllConfig(h=args.h, d=args.d)
        res = randomlab.lll_sampler(g, cfg, args.trials, args.seed)
        rec = {"mode": "lll", "n": args.n, "d": args.d, "h": args.h,
               "trials": res.trials, "successes": res.successes,
               "estimate": res.estimate, "ci_low": res.ci_low,
               "ci_high": res.ci_high, "edge_failure_rate": res.edge_failure_rate,
               "seed": res.seed}
        return {"records": [rec]}
    if args.mode == "giant":
        records = []
        for t in range(args.trials):
            g = graphs.sample_er(args.n, args.d, args.seed + t)
            info = graphs.components(g)
            records.append({"mode": "giant", "n": args.n, "d": args.d,
                            "seed": args.seed + t,
                            "components": info.count,
                            "giant_fraction": info.giant_size / args.n,
                            "predicted": randomlab.giant_fraction_prediction(args.d)
                            if args.d > 1 else None})
        return {"records": records}
    # pairs
    size = args.size
    if size is None:
        size = math.ceil(randomlab.flatness_parameter(args.d) * args.n)
    found = 0
    records = []
    for t in range(args.trials):
        g = graphs.sample_er(args.n, args.d, args.seed + t)
        res = randomlab.independent_pair_search(g, size)
        found += res.found
        records.append({"mode": "pairs", "n": args.n, "d": args.d, "size": size,
                        "seed": args.seed + t, "found": res.found,
                        "definitive": res.definitive})
    return {"records": records,
            "summary": {"found_fraction": found / args.trials}}


def _cmd_reproduce_abstract(args):
    records = _constants_records(2000, 256, 128)
    band_pairs, tent_pairs = [], []
    for h in (50, 100, 200, 400):
        band_pairs.append((h, strips.top_eigenvalue(strips.BandOperator(h),
                                                    1e-12).normalized))
        tent_pairs.append((h, strips.top_eigenvalue(strips.TentOperator(h),
                                                    1e-12).normalized))
    pinned_pairs = [(h, strips.top_eigenvalue(
        strips.PinnedStripOperator(2, h), 1e-12).normalized) for h in (10, 15, 20)]
    free3_pairs = [(h, strips.top_eigenvalue(
        strips.FreeStripOperator(3, h), 1e-12).normalized) for h in (10, 15, 20)]
    strip_rows = [
        ("strip_band", strips.extrapolate_limit(band_pairs).limit, "1.554",
         "band operator, h -> inf"),
        ("strip_two_rows", strips.extrapolate_limit(tent_pairs).limit, "1.6438",
         "two-row operator, h -> inf"),
        ("strip_pinned_two", strips.extrapolate_limit(pinned_pairs).limit, "1.4895",
         "pinned two-row operator, h -> inf"),
        ("strip_three_rows", strips.extrapolate_limit(free3_pairs).limit, "1.553",
         "three-row operator, h -> inf"),
    ]
    records += [{"name": n, "value": v, "reference": r, "equation": e,
                 "metadata": ""} for n, v, r, e in strip_rows]
    gb = continuum.grid_bound_report()
    records += [
        {"name": "square_grid_lower", "value": gb.lower_improved,
         "reference": "1.3685", "equation": "psi^(3/2)/sqrt(2)", "metadata": ""},
        {"name": "square_grid_upper", "value": gb.upper_improved,
         "reference": "1.4895", "equation": "zeta", "metadata": ""},
    ]
    return {"records": records}


_DISPATCH = {
    "generate": _cmd_generate,
    "count": _cmd_count,
    "ehrhart": _cmd_ehrhart,
    "strip": _cmd_strip,
    "constants": _cmd_constants,
    "bounds": _cmd_bounds,
    "random-lab": _cmd_random_lab,
    "reproduce-abstract": _cmd_reproduce_abstract,
}

_TABLE_DEFAULT = {"constants", "reproduce-abstract"}


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.10g}"
    if v is None:
        return ""
    return str(v)


def _as_table(records) -> str:
    if not records:
        return "(no records)\n"
    cols = list(records[0].keys())
    rows = [[_format_cell(r.get(c)) for c in cols] for r in records]
    widths = [max(len(c), *(len(row[i]) for row in rows))
              for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip()
              for row in rows]
    return "\n".join(lines) + "\n"


def _as_csv(records) -> str:
    import csv
    import io
    buf = io.StringIO()
    if records:
        writer = csv.DictWriter(buf, fieldnames=list(records[0].keys()))
        writer.writeheader()
        for r in records:
            writer.writerow({k: _format_cell(v) for k, v in r.items()})
    return buf.getvalue()


def _emit(payload: dict, args) -> str:
    if "text" in payload:
        return payload["text"]
    fmt = args.format or ("table" if args.command in _TABLE_DEFAULT else "json")
    body = dict(payload)
    body["schema"] = SCHEMA
    body["command"] = args.command
    if not args.deterministic:
        body["timestamp"] = datetime.now(timezone.utc).isoformat()
    if fmt == "json":
        return json.dumps(body, sort_keys=True, indent=2, default=str) + "\n"
    records = payload.get("records", [])
    if fmt == "csv":
        return _as_csv(records)
    return _as_table(records)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = _DISPATCH[args.command](args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return 4
    text = _emit(payload, args)
    if args.out:
        body = dict(payload)
        body["schema"] = SCHEMA
        body["command"] = args.command
        with open(args.out, "w") as fh:
            fh.write(json.dumps(body, sort_keys=True, indent=2, default=str) + "\n")
    sys.stdout.write(text)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

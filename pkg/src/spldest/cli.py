"""Command-line interface.

Subcommands compose through intermediate files: ``gen`` and ``ingest``
produce edge lists, ``oracle`` the exact SPLD, ``sample`` a dyad-SPL CSV,
``estimate`` a result JSON, and ``evaluate`` a full replication report with
figures rendered next to the delimited output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import estimators as est
from . import io as sio
from .evaluation import replicate
from .generators import degree_moments
from .graph import exact_spld
from .pipeline import SamplingDesign, run_sample_pipeline


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (sio.ConfigError, sio.EdgeListParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spldest",
        description="Estimate shortest-path-length distributions from random-walk samples.",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("gen", help="generate a network and write it as an edge list")
    p.add_argument("model", choices=["er", "ba", "gamma"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, help="edge probability (er)")
    p.add_argument("--m-attach", type=int, help="edges per new node (ba)")
    p.add_argument("--m0", type=int, help="seed ring size (ba), default m_attach")
    p.add_argument("--shape", type=float, help="gamma shape (gamma)")
    p.add_argument("--scale", type=float, help="gamma scale (gamma)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ingest", help="clean an edge list down to its largest component")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="normalized edge list path")
    p.add_argument("--report", help="ingestion report JSON path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("oracle", help="exact SPLD of an edge-list graph")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="CSV path (l,count,fraction)")
    p.add_argument("--json", help="summary JSON path")
    p.add_argument("--figure", help="histogram PNG path")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sample", help="random-walk sample to a dyad-SPL CSV")
    p.add_argument("input", help="edge-list path or generator spec (er:/ba:/gamma:)")
    p.add_argument("--beta", type=float, default=0.2)
    p.add_argument("--walks", type=int, default=1, help="number of walks H")
    p.add_argument("--gamma", type=float, default=0.3, help="landmark fraction")
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument(
        "--spl-method", choices=["auto", "observed", "landmark", "exact"], default="auto"
    )
    p.add_argument("--cv-threshold", type=float, default=2.0)
    p.add_argument(
        "--tau-method", choices=[est.APPROACH_1, est.APPROACH_2], default=est.APPROACH_1
    )
    p.add_argument(
        "--weight-kind",
        choices=[sio.WEIGHT_PSI, sio.WEIGHT_PI],
        default=sio.WEIGHT_PSI,
        help="psi weights drive GHH estimators, pi weights drive HT estimators",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("estimate", help="estimate the SPLD from a dyad-SPL CSV")
    p.add_argument("dyads", help="CSV written by the sample subcommand")
    p.add_argument(
        "--estimators",
        default="uw,ghh_ratio",
        help="comma list of uw,ghh,ghh_ratio,ht,ht_ratio",
    )
    p.add_argument("--out", required=True, help="result JSON path")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("evaluate", help="K-replication evaluation from a config file")
    p.add_argument("--config", required=True)
    p.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key (repeatable)",
    )
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_evaluate)
    return parser


def _load_graph(spec: str, seed: int):
    g, provenance = sio.resolve_input(spec, seed)
    return g, provenance


def cmd_gen(args) -> int:
    if args.model == "er":
        if args.p is None:
            raise sio.ConfigError("er needs --p")
        spec = f"er:n={args.n},p={args.p}"
    elif args.model == "ba":
        if args.m_attach is None:
            raise sio.ConfigError("ba needs --m-attach")
        spec = f"ba:n={args.n},m_attach={args.m_attach}"
        if args.m0 is not None:
            spec += f",m0={args.m0}"
    else:
        if args.shape is None or args.scale is None:
            raise sio.ConfigError("gamma needs --shape and --scale")
        spec = f"gamma:n={args.n},shape={args.shape},scale={args.scale}"
    g, _ = _load_graph(spec, args.seed)
    stats = degree_moments(g)
    sio.write_edge_list(g, args.out, comments=[f"source {spec} seed {args.seed}"])
    print(
        f"wrote {args.out}: n={g.n} m={g.m} "
        f"mean_degree={stats.mean:.3f} cv={stats.cv:.3f}"
    )
    return 0


def cmd_ingest(args) -> int:
    g, report = sio.ingest_edge_list(args.input)
    sio.write_edge_list(g, args.out, comments=[f"largest component of {args.input}"])
    if args.report:
        sio.write_json(args.report, report.to_dict())
    stats = degree_moments(g)
    print(
        f"component: n={g.n} m={g.m} mean_degree={stats.mean:.3f} cv={stats.cv:.3f} "
        f"(dropped {report.self_loops_dropped} self-loops, "
        f"merged {report.duplicates_merged} duplicates)"
    )
    return 0


def cmd_oracle(args) -> int:
    g, _ = sio.ingest_edge_list(args.input)
    hist = exact_spld(g)
    sio.write_spld_csv(args.out, hist)
    if args.json:
        stats = degree_moments(g)
        sio.write_json(
            args.json,
            {
                "n": g.n,
                "m": g.m,
                "mean_degree": stats.mean,
                "cv": stats.cv,
                "mean_distance": hist.mean,
                "diameter": hist.max_length,
                "spld": hist.fractions.tolist(),
            },
        )
    if args.figure:
        from .plotting import plot_spld_histogram

        plot_spld_histogram(hist, args.figure, title=f"exact SPLD of {args.input}")
    print(f"wrote {args.out}: diameter={hist.max_length} mean={hist.mean:.4f}")
    return 0


def cmd_sample(args) -> int:
    g, provenance = _load_graph(args.input, args.seed)
    design = SamplingDesign(
        beta=args.beta,
        num_walks=args.walks,
        gamma=args.gamma,
        estimators=(),
        spl_method=args.spl_method,
        cv_threshold=args.cv_threshold,
        burn_in=args.burn_in,
        tau_method=args.tau_method,
    )
    run = run_sample_pipeline(g, design, args.seed)
    table = run.table
    mult = run.weights.multiplicities(table)
    if args.weight_kind == sio.WEIGHT_PSI:
        weights = run.weights.psi_for(table)
    else:
        weights = run.weights.pi_for(table)
    metadata = {
        "n": g.n,
        "s_size": run.sample.s_size,
        "S_size": run.sample.S_size,
        "s_star_size": len(run.sample.distinct_nodes),
        "method": table.method,
        "weight_kind": args.weight_kind,
        "excluded_pairs": table.excluded_pairs,
        "cv_hat": run.moments.cv_hat,
        "edge_fraction": run.edge_fraction,
        "beta": args.beta,
        "num_walks": args.walks,
        "seed": args.seed,
        "source": provenance["source"],
    }
    sio.write_dyad_csv(args.out, table, mult, weights, metadata)
    print(
        f"wrote {args.out}: {len(table)} dyads via {table.method} SPLs "
        f"(cv_hat={run.moments.cv_hat:.2f}, |s*|={len(run.sample.distinct_nodes)})"
    )
    return 0


def cmd_estimate(args) -> int:
    table, mult, weights, metadata = sio.read_dyad_csv(args.dyads)
    kinds = sio._coerce("estimators", args.estimators)
    weight_kind = metadata.get("weight_kind", sio.WEIGHT_PSI)
    n = int(metadata["n"])
    n_dyads = n * (n - 1) // 2
    results = {}
    for kind in kinds:
        if kind == est.UW:
            results[kind] = est.estimate_uw(table)
        elif kind in (est.GHH, est.GHH_RATIO):
            if weight_kind != sio.WEIGHT_PSI:
                raise sio.ConfigError(
                    f"{kind} needs psi weights; re-run sample with --weight-kind psi"
                )
            if kind == est.GHH:
                results[kind] = est.estimate_ghh(
                    table, mult, weights, int(metadata["S_size"]), n_dyads
                )
            else:
                # alpha cancels in the ratio form, so psi weights work directly
                results[kind] = est.estimate_ghh_ratio(table, mult, weights)
        else:
            if weight_kind != sio.WEIGHT_PI:
                raise sio.ConfigError(
                    f"{kind} needs pi weights; re-run sample with --weight-kind pi"
                )
            if kind == est.HT:
                results[kind] = est.estimate_ht(table, weights, n_dyads)
            else:
                results[kind] = est.estimate_ht_ratio(table, weights)
    payload = {
        "metadata": metadata,
        "estimates": {
            kind: {
                "fractions": r.fractions.tolist(),
                "sum": r.total,
                "mean_spl": r.mean_spl,
            }
            for kind, r in results.items()
        },
    }
    sio.write_json(args.out, payload)
    print(f"wrote {args.out}: {', '.join(results)}")
    return 0


def cmd_evaluate(args) -> int:
    config = sio.parse_config(args.config, args.overrides)
    g, provenance = _load_graph(config.input, config.seed)
    report = replicate(
        g, config.design(), config.replicates, config.seed
    )
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = report.to_dict()
    payload["config"] = dict(payload["config"], **config.to_dict())
    payload["input_provenance"] = provenance
    sio.write_json(out_dir / "report.json", payload)
    for kind in report.estimators:
        sio.write_report_csv(out_dir / f"report_{kind.lower()}.csv", report, kind)
    if not args.no_figures:
        from .plotting import plot_metric_summary, plot_spld_boxplots

        for kind in report.estimators:
            plot_spld_boxplots(report, kind, out_dir / f"boxplot_{kind.lower()}.png")
        plot_metric_summary(report, out_dir / "metrics.png")
    for kind, ev in report.estimators.items():
        kl = f" KL={ev.kl.aggregate:.4f}" if ev.kl else ""
        print(f"{kind}: MAD={ev.mad.aggregate:.4f} RMSE={ev.rmse.aggregate:.4f}{kl}")
    print(f"report written to {out_dir}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

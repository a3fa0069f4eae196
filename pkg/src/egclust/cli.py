"""Command-line experiment runner.

Subcommands:
  run        one clustering run; writes labels.csv, metrics.json, iters.csv
  sweep-k    rerun over a list of k values (all algorithms unless narrowed);
             writes sweep.csv
  sweep-eta  rerun eg1 over a list of exploration ratios; writes sweep.csv
  demo2d     generate a seeded 2-D Gaussian-blob CSV dataset

All outputs are UTF-8 CSV/JSON with fixed number formatting, so identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .dataset import Dataset, impute_missing, load_csv, standardize
from .engine import RunConfig, RunReport, run
from .evaluation import accuracy, mapping_mode
from .rewiring import ALGORITHMS, ErrPolicy
from .synth import gaussian_blobs

log = logging.getLogger("egclust")


def _fmt(x: float) -> str:
    return "%.9g" % x


def _column_selector(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _add_dataset_args(p: argparse.ArgumentParser):
    p.add_argument("--dataset", required=True, help="path to the input CSV")
    p.add_argument("--format", default="csv", choices=["csv"], help="input format")
    p.add_argument("--header", action="store_true", help="first row is a header")
    p.add_argument("--label-col", type=_column_selector, default=None,
                   help="class column, by index or header name")
    p.add_argument("--drop-col", type=_column_selector, action="append", default=[],
                   help="column to ignore (e.g. sample ids); repeatable")
    p.add_argument("--missing-token", default="?", help="token marking missing cells")
    p.add_argument("--standardize", action="store_true",
                   help="rescale features to zero mean, unit std")
    p.add_argument("--impute-seed", type=int, default=0,
                   help="seed for uniform imputation of missing cells")


def _add_game_args(p: argparse.ArgumentParser, require_k=True, algorithms=True):
    if algorithms:
        p.add_argument("--algorithm", choices=ALGORITHMS, default=None)
    if require_k:
        p.add_argument("--k", type=int, required=True, help="number of nearest neighbors")
    p.add_argument("--eta", type=float, default=None,
                   help="eg1 exploration ratio in [0,1] (default 0.5)")
    p.add_argument("--sigma", type=float, default=1.0, help="distance scale")
    p.add_argument("--max-iters", type=int, default=200)
    p.add_argument("--window", type=int, default=5,
                   help="identical snapshots required for constant stability")
    p.add_argument("--max-period", type=int, default=4,
                   help="largest periodic stability pattern checked")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egclust",
        description="Clustering by evolutionary games on an evolving knn network.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress details")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single clustering run")
    _add_dataset_args(p_run)
    _add_game_args(p_run)
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--dump-edges", action="store_true",
                       help="also write edges.csv with t,src,dst per iteration")

    p_sk = sub.add_parser("sweep-k", help="sweep the neighbor count k")
    _add_dataset_args(p_sk)
    _add_game_args(p_sk, require_k=False)
    p_sk.add_argument("--values", required=True,
                      help="comma-separated k values, e.g. 5,10,15")
    p_sk.add_argument("--out", required=True, help="output directory")

    p_se = sub.add_parser("sweep-eta", help="sweep the eg1 exploration ratio")
    _add_dataset_args(p_se)
    _add_game_args(p_se)
    p_se.add_argument("--values", required=True,
                      help="comma-separated eta values, e.g. 0.1,0.2,0.5")
    p_se.add_argument("--out", required=True, help="output directory")

    p_demo = sub.add_parser("demo2d", help="write a synthetic 2-D blob dataset")
    p_demo.add_argument("--out", required=True, help="output CSV path")
    p_demo.add_argument("--n-points", type=int, default=150)
    p_demo.add_argument("--blobs", type=int, default=3)
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.add_argument("--spread", type=float, default=0.5)
    p_demo.add_argument("--separation", type=float, default=10.0)
    return parser


def _policy_from(args, parser, algorithm=None) -> ErrPolicy:
    algorithm = algorithm or args.algorithm
    if algorithm is None:
        parser.error("--algorithm is required")
    if algorithm != "eg1":
        if args.eta is not None:
            parser.error(f"--eta applies only to eg1, not {algorithm}")
        return ErrPolicy(kind=algorithm)
    eta = 0.5 if args.eta is None else args.eta
    if not 0.0 <= eta <= 1.0:
        parser.error(f"--eta must be in [0, 1], got {eta}")
    return ErrPolicy(kind="eg1", eta=eta)


def _load_dataset(args) -> Dataset:
    ds = load_csv(
        args.dataset,
        label_column=args.label_col,
        missing_token=args.missing_token,
        has_header=args.header,
        drop_columns=args.drop_col,
    )
    if ds.has_missing:
        n_missing = int(np.isnan(ds.points).sum())
        log.info("imputing %d missing cells (seed %d)", n_missing, args.impute_seed)
        ds = impute_missing(ds, seed=args.impute_seed)
    if args.standardize:
        ds = standardize(ds)
    return ds


def _run_one(ds: Dataset, args, policy: ErrPolicy, k: int,
             edge_rows=None) -> tuple[RunReport, float | None]:
    config = RunConfig(
        k=k,
        policy=policy,
        sigma=args.sigma,
        max_iters=args.max_iters,
        window=args.window,
        max_period=args.max_period,
    )
    callback = None
    if edge_rows is not None:
        def callback(state, _n):
            for src in range(state.net.n):
                for dst in state.net.gamma[src]:
                    edge_rows.append((state.t, src, int(dst)))
    report = run(ds, config, step_callback=callback)
    acc = accuracy(report.labels, ds.labels) if ds.labels is not None else None
    return report, acc


def _log_payoff_histogram(u: np.ndarray):
    counts, edges = np.histogram(u, bins=min(10, max(2, len(u) // 5)))
    for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
        log.info("payoff [%.4g, %.4g): %s", lo, hi, "#" * max(1, int(40 * c / max(counts))) if c else "")


def _write_run_outputs(out_dir: str, ds: Dataset, args, policy: ErrPolicy, k: int,
                       report: RunReport, acc: float | None, edge_rows=None):
    os.makedirs(out_dir, exist_ok=True)

    with open(os.path.join(out_dir, "labels.csv"), "w", newline="") as fh:
        if ds.labels is not None:
            fh.write("point_id,cluster_id,true_class\n")
            for i, (c, y) in enumerate(zip(report.labels, ds.labels)):
                fh.write(f"{i},{c},{ds.label_names[y] if ds.label_names else y}\n")
        else:
            fh.write("point_id,cluster_id\n")
            for i, c in enumerate(report.labels):
                fh.write(f"{i},{c}\n")

    metrics = {
        "dataset": ds.name,
        "n_points": ds.n_points,
        "n_features": ds.n_features,
        "algorithm": policy.kind,
        "k": k,
        "eta": policy.eta,
        "sigma": args.sigma,
        "standardized": bool(args.standardize),
        "n_clusters": report.n_clusters,
        "iterations": report.iterations,
        "converged": report.converged,
        "total_edges_rewired": int(sum(report.rewired_per_iter)),
        "accuracy": None if acc is None else round(acc, 9),
        "label_mapping": None if acc is None else mapping_mode(report.labels, ds.labels),
    }
    with open(os.path.join(out_dir, "metrics.json"), "w") as fh:
        json.dump(metrics, fh, indent=2, sort_keys=True)
        fh.write("\n")

    with open(os.path.join(out_dir, "iters.csv"), "w", newline="") as fh:
        fh.write("t,edges_rewired,n_distinct_pointers\n")
        for t, (nrw, nd) in enumerate(
            zip(report.rewired_per_iter, report.distinct_pointers_per_iter), start=1
        ):
            fh.write(f"{t},{nrw},{nd}\n")

    if edge_rows is not None:
        with open(os.path.join(out_dir, "edges.csv"), "w", newline="") as fh:
            fh.write("t,src,dst\n")
            for t, src, dst in edge_rows:
                fh.write(f"{t},{src},{dst}\n")

    if report.final_payoffs is not None and log.isEnabledFor(logging.INFO):
        _log_payoff_histogram(report.final_payoffs)


def cmd_run(args, parser) -> int:
    policy = _policy_from(args, parser)
    ds = _load_dataset(args)
    edge_rows = [] if args.dump_edges else None
    report, acc = _run_one(ds, args, policy, args.k, edge_rows=edge_rows)
    _write_run_outputs(args.out, ds, args, policy, args.k, report, acc, edge_rows)
    log.info(
        "%s k=%d: %d clusters in %d iterations (converged=%s)%s",
        policy.kind, args.k, report.n_clusters, report.iterations, report.converged,
        "" if acc is None else f", accuracy={acc:.4f}",
    )
    return 0


def _parse_values(text: str, cast, parser, what: str):
    parts = [s for s in (tok.strip() for tok in text.split(",")) if s]
    if not parts:
        parser.error(f"empty {what} range")
    try:
        return [cast(s) for s in parts]
    except ValueError:
        parser.error(f"bad {what} value in {text!r}")


def _write_sweep(out_dir: str, parameter: str, rows: list[dict]):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "sweep.csv"), "w", newline="") as fh:
        fh.write("parameter,value,algorithm,accuracy,n_clusters,iterations,"
                 "total_edges_rewired,converged\n")
        for r in rows:
            acc = "" if r["accuracy"] is None else _fmt(r["accuracy"])
            fh.write(
                f"{parameter},{_fmt(r['value'])},{r['algorithm']},{acc},"
                f"{r['n_clusters']},{r['iterations']},{r['total_edges_rewired']},"
                f"{r['converged']}\n"
            )


def cmd_sweep_k(args, parser) -> int:
    values = _parse_values(args.values, int, parser, "k")
    algorithms = [args.algorithm] if args.algorithm else list(ALGORITHMS)
    ds = _load_dataset(args)
    rows = []
    for k in values:
        for algo in algorithms:
            policy = _policy_from(args, parser, algorithm=algo)
            report, acc = _run_one(ds, args, policy, k)
            rows.append({
                "value": k, "algorithm": algo, "accuracy": acc,
                "n_clusters": report.n_clusters, "iterations": report.iterations,
                "total_edges_rewired": int(sum(report.rewired_per_iter)),
                "converged": report.converged,
            })
            log.info("k=%d %s: n_clusters=%d acc=%s", k, algo, report.n_clusters, acc)
    _write_sweep(args.out, "k", rows)
    return 0


def cmd_sweep_eta(args, parser) -> int:
    if args.algorithm not in (None, "eg1"):
        parser.error("sweep-eta applies only to eg1")
    if args.eta is not None:
        parser.error("use --values to supply the eta range")
    values = _parse_values(args.values, float, parser, "eta")
    ds = _load_dataset(args)
    rows = []
    for eta in values:
        if not 0.0 <= eta <= 1.0:
            parser.error(f"eta value {eta} outside [0, 1]")
        report, acc = _run_one(ds, args, ErrPolicy(kind="eg1", eta=eta), args.k)
        rows.append({
            "value": eta, "algorithm": "eg1", "accuracy": acc,
            "n_clusters": report.n_clusters, "iterations": report.iterations,
            "total_edges_rewired": int(sum(report.rewired_per_iter)),
            "converged": report.converged,
        })
        log.info("eta=%.3g: n_clusters=%d acc=%s", eta, report.n_clusters, acc)
    _write_sweep(args.out, "eta", rows)
    return 0


def cmd_demo2d(args) -> int:
    ds = gaussian_blobs(
        n_points=args.n_points,
        n_blobs=args.blobs,
        seed=args.seed,
        spread=args.spread,
        separation=args.separation,
    )
    out_dir = os.path.dirname(os.path.abspath(args.out))
    os.makedirs(out_dir, exist_ok=True)
    with open(args.out, "w", newline="") as fh:
        fh.write("x,y,label\n")
        for (x, y), lab in zip(ds.points, ds.labels):
            fh.write(f"{_fmt(x)},{_fmt(y)},{lab}\n")
    log.info("wrote %d points, %d blobs to %s", ds.n_points, args.blobs, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        if args.command == "run":
            return cmd_run(args, parser)
        if args.command == "sweep-k":
            return cmd_sweep_k(args, parser)
        if args.command == "sweep-eta":
            return cmd_sweep_eta(args, parser)
        if args.command == "demo2d":
            return cmd_demo2d(args)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"egclust: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

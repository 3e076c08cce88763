"""`bench` command line: sweep, report, boundary, introspect."""
import argparse
import sys

from .harness.aggregate import aggregate
from .harness.boundary import aggregate_boundary, emit_boundary, run_boundary_sweep
from .harness.config import ConfigError, load_config
from .harness.report import emit_report, read_results_csv
from .harness.runner import HarnessError, run_grid
from .introspect import cooc_path_mean, load_dump, mean_tree_depth


def _cmd_sweep(args) -> int:
    overrides = {}
    if args.out:
        overrides["out_dir"] = args.out
    if args.workers is not None:
        overrides["workers"] = args.workers
    cfg = load_config(args.config, overrides=overrides or None)
    records = run_grid(cfg)
    rows, baselines = aggregate(records)
    emit_report(cfg["out_dir"], rows, baselines, records)
    print(f"wrote {len(records)} records to {cfg['out_dir']}")
    return 0


def _cmd_report(args) -> int:
    records = read_results_csv(f"{args.indir}/results.csv")
    rows, baselines = aggregate(records)
    outdir = args.out or args.indir
    emit_report(outdir, rows, baselines, records)
    print(f"summarized {len(records)} records into {outdir}")
    return 0


def _cmd_boundary(args) -> int:
    overrides = {}
    if args.out:
        overrides["out_dir"] = args.out
    if args.workers is not None:
        overrides["workers"] = args.workers
    cfg = load_config(args.config, overrides=overrides or None)
    records = run_boundary_sweep(cfg)
    rows = aggregate_boundary(records)
    emit_boundary(cfg["out_dir"], rows, records)
    print(f"wrote boundary sweep ({len(records)} records) to {cfg['out_dir']}")
    return 0


def _cmd_introspect(args) -> int:
    with open(args.dump) as fh:
        dump = load_dump(fh.read())
    fi = dump.feature_index(args.feat_a)
    fj = dump.feature_index(args.feat_b)
    if fi is None or fj is None:
        missing = args.feat_a if fi is None else args.feat_b
        print(f"error: feature {missing!r} not in dump", file=sys.stderr)
        return 1
    mean = cooc_path_mean(dump, fi, fj)
    pooled = cooc_path_mean(dump, fi, fj, pooled=True)
    print("cooc_path_mean,cooc_path_pooled,n_trees,mean_depth")
    print(f"{mean:.6f},{pooled:.6f},{len(dump.trees)},"
          f"{mean_tree_depth(dump):.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bench",
        description="column-subsampling benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run the full paired grid")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("report", help="re-summarize stored results")
    p.add_argument("--in", dest="indir", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("boundary", help="nuisance-strength sweep")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("introspect", help="path co-usage of two features")
    p.add_argument("--dump", required=True)
    p.add_argument("--feat-a", required=True)
    p.add_argument("--feat-b", required=True)
    p.set_defaults(func=_cmd_introspect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, HarnessError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

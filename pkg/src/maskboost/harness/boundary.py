"""Nuisance-strength sweep: rerun the strongest subsampling arm against
its baseline while varying the shared-nuisance scale of the continuous
generator. Larger scales make the cancellation composite more necessary."""
import csv
import os
from dataclasses import dataclass

import matplotlib.pyplot as plt

from .aggregate import _delta_stats, _rel
from .runner import (CellKey, HarnessError, RunRecord, calibrated_params_for,
                     resolve_workers, run_cell)


@dataclass(frozen=True)
class BoundaryRecord:
    sigma_u: float
    record: RunRecord


@dataclass(frozen=True)
class BoundaryRow:
    sigma_u: float
    feature_set: str
    n: int
    d_pr_mean: float
    d_pr_lo: float
    d_pr_hi: float
    rel_pr_pct: float


def boundary_cells(cfg):
    cells = []
    for sigma_u in cfg["boundary.sigma_u_grid"]:
        for fs in cfg["feature_sets"]:
            for seed in range(cfg["seeds"]):
                cells.append((sigma_u, CellKey("A", fs, "C0", 1.0, seed)))
                cells.append((sigma_u, CellKey("A", fs, "C3",
                                               cfg["boundary.s"], seed)))
    return cells


def _boundary_worker(args):
    cfg, sigma_u, key = args
    params = calibrated_params_for(cfg, "A", sigma_u=sigma_u)
    try:
        rec = run_cell(cfg, key, params=params,
                       stream_tags=("boundary", sigma_u))
        return BoundaryRecord(sigma_u=sigma_u, record=rec), None
    except Exception as exc:  # noqa: BLE001 - reported per cell
        return None, (sigma_u, key, f"{type(exc).__name__}: {exc}")


def run_boundary_sweep(cfg, workers=None) -> list[BoundaryRecord]:
    import multiprocessing

    cells = boundary_cells(cfg)
    if workers is None:
        workers = resolve_workers(cfg)
    jobs = [(cfg, sigma_u, key) for sigma_u, key in cells]
    if workers > 1 and len(jobs) > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            outcomes = pool.map(_boundary_worker, jobs, chunksize=1)
    else:
        outcomes = [_boundary_worker(job) for job in jobs]
    failures = [err for _rec, err in outcomes if err is not None]
    if failures:
        lines = "\n".join(f"  sigma_u={su:g} {key.label()}: {msg}"
                          for su, key, msg in failures)
        raise HarnessError(f"{len(failures)} boundary cell(s) failed:\n{lines}")
    records = [rec for rec, _err in outcomes]
    return sorted(records, key=lambda br: (br.sigma_u, br.record.key))


def aggregate_boundary(records: list[BoundaryRecord]) -> list[BoundaryRow]:
    base = {}
    for br in records:
        k = br.record.key
        if k.arm == "C0":
            base[(br.sigma_u, k.feature_set, k.seed)] = br.record
    groups: dict[tuple, list[BoundaryRecord]] = {}
    for br in records:
        if br.record.key.arm != "C0":
            groups.setdefault((br.sigma_u, br.record.key.feature_set),
                              []).append(br)
    rows = []
    for (sigma_u, fs), brs in sorted(groups.items()):
        brs.sort(key=lambda b: b.record.key.seed)
        deltas = []
        base_vals = []
        for br in brs:
            bkey = (sigma_u, fs, br.record.key.seed)
            if bkey not in base:
                raise HarnessError(
                    f"missing C0 baseline for sigma_u={sigma_u:g} fs={fs} "
                    f"seed={br.record.key.seed}")
            deltas.append(br.record.pr_auc - base[bkey].pr_auc)
            base_vals.append(base[bkey].pr_auc)
        stats = _delta_stats(deltas)
        rows.append(BoundaryRow(
            sigma_u=sigma_u, feature_set=fs, n=stats.n,
            d_pr_mean=stats.mean, d_pr_lo=stats.ci_lo, d_pr_hi=stats.ci_hi,
            rel_pr_pct=_rel(stats.mean, sum(base_vals) / len(base_vals))))
    return rows


def emit_boundary(outdir, rows: list[BoundaryRow],
                  records: list[BoundaryRecord]) -> None:
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "boundary_results.csv"), "w",
              newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sigma_u", "dgp", "feature_set", "arm", "s", "seed",
                    "pr_auc", "roc_auc", "latent_corr", "cooc_path_mean",
                    "best_iteration"])
        for br in records:
            r = br.record
            k = r.key
            w.writerow([repr(br.sigma_u), k.dgp, k.feature_set, k.arm,
                        repr(k.s), k.seed, repr(r.pr_auc), repr(r.roc_auc),
                        repr(r.latent_corr), repr(r.cooc_path_mean),
                        r.best_iteration])
    # one file per feature set: a row per grid point
    for fs in sorted({row.feature_set for row in rows}):
        path = os.path.join(outdir, f"boundary_{fs}.csv")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sigma_u", "n", "delta_pr", "delta_pr_lo",
                        "delta_pr_hi", "rel_delta_pr_pct"])
            for row in rows:
                if row.feature_set != fs:
                    continue
                w.writerow([f"{row.sigma_u:g}", row.n,
                            f"{row.d_pr_mean:.4f}", f"{row.d_pr_lo:.4f}",
                            f"{row.d_pr_hi:.4f}", f"{row.rel_pr_pct:.1f}"])

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for fs, color in (("F0", "tab:red"), ("F1", "tab:blue")):
        picked = sorted([r for r in rows if r.feature_set == fs],
                        key=lambda r: r.sigma_u)
        if not picked:
            continue
        ax.errorbar([r.sigma_u for r in picked],
                    [r.d_pr_mean for r in picked],
                    yerr=[[r.d_pr_mean - r.d_pr_lo for r in picked],
                          [r.d_pr_hi - r.d_pr_mean for r in picked]],
                    marker="o", color=color, capsize=3, label=fs)
    ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xlabel("nuisance scale sigma_U")
    ax.set_ylabel("dPR-AUC (C3 vs C0)")
    ax.set_title("ratio-necessity sweep")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "fig_boundary_pr.svg"), format="svg",
                metadata={"Date": None})
    plt.close(fig)

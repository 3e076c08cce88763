"""CSV, markdown, and SVG emission for sweep results."""
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .aggregate import BaselineRow, ReportRow  # noqa: E402
from .runner import CellKey, RunRecord  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "maskboost"

RESULTS_COLUMNS = ("dgp", "feature_set", "arm", "s", "seed", "pr_auc",
                   "roc_auc", "latent_corr", "cooc_path_mean",
                   "best_iteration")


def _f(x: float) -> str:
    return repr(float(x))


def write_results_csv(path, records: list[RunRecord]) -> None:
    """One row per run, fixed column order, deterministic bytes.

    Wall times are volatile and go to a separate timings file instead.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RESULTS_COLUMNS)
        for r in sorted(records, key=lambda rec: rec.key):
            k = r.key
            w.writerow([k.dgp, k.feature_set, k.arm, _f(k.s), k.seed,
                        _f(r.pr_auc), _f(r.roc_auc), _f(r.latent_corr),
                        _f(r.cooc_path_mean), r.best_iteration])


def read_results_csv(path) -> list[RunRecord]:
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RESULTS_COLUMNS:
            raise ValueError(f"unexpected results schema in {path}")
        for row in reader:
            key = CellKey(dgp=row["dgp"], feature_set=row["feature_set"],
                          arm=row["arm"], s=float(row["s"]),
                          seed=int(row["seed"]))
            records.append(RunRecord(
                key=key, pr_auc=float(row["pr_auc"]),
                roc_auc=float(row["roc_auc"]),
                latent_corr=float(row["latent_corr"]),
                cooc_path_mean=float(row["cooc_path_mean"]),
                best_iteration=int(row["best_iteration"]), wall_time=0.0))
    return records


def write_timings_csv(path, records: list[RunRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dgp", "feature_set", "arm", "s", "seed", "wall_time_s",
                    "best_iteration"])
        for r in sorted(records, key=lambda rec: rec.key):
            k = r.key
            w.writerow([k.dgp, k.feature_set, k.arm, _f(k.s), k.seed,
                        f"{r.wall_time:.3f}", r.best_iteration])


def _fmt4(x: float) -> str:
    return f"{x:.4f}"


def _fmt1(x: float) -> str:
    return f"{x:.1f}"


SUMMARY_COLUMNS = ("panel", "dgp", "feature_set", "arm", "s", "n",
                   "delta_pr", "delta_pr_lo", "delta_pr_hi",
                   "rel_delta_pr_pct", "delta_roc", "delta_roc_lo",
                   "delta_roc_hi", "rel_delta_roc_pct", "delta_cooc",
                   "delta_latent_corr", "pr_auc", "roc_auc", "latent_corr",
                   "cooc_path_mean")


def _panel_of(fs: str) -> str:
    return "A" if fs == "F0" else "B"


def write_summary_csv(path, rows: list[ReportRow],
                      baselines: list[BaselineRow]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for r in rows:
            if r.arm == "C0":
                continue
            w.writerow([_panel_of(r.feature_set), r.dgp, r.feature_set,
                        r.arm, f"{r.s:g}", r.n,
                        _fmt4(r.d_pr.mean), _fmt4(r.d_pr.ci_lo),
                        _fmt4(r.d_pr.ci_hi), _fmt1(r.rel_pr_pct),
                        _fmt4(r.d_roc.mean), _fmt4(r.d_roc.ci_lo),
                        _fmt4(r.d_roc.ci_hi), _fmt1(r.rel_roc_pct),
                        _fmt4(r.d_cooc), _fmt4(r.d_latent),
                        "", "", "", ""])
        for b in baselines:
            w.writerow(["C", b.dgp, b.feature_set, "C0", "1", b.n,
                        "", "", "", "", "", "", "", "", "", "",
                        _fmt4(b.pr_auc), _fmt4(b.roc_auc),
                        _fmt4(b.latent_corr), _fmt4(b.cooc_path_mean)])


def write_summary_md(path, rows: list[ReportRow],
                     baselines: list[BaselineRow]) -> None:
    lines = ["# Paired sweep summary", ""]
    for fs, title in (("F0", "Panel A: F0 (primitives only)"),
                      ("F1", "Panel B: F1 (primitives + engineered ratio)")):
        picked = [r for r in rows if r.feature_set == fs and r.arm != "C0"]
        if not picked:
            continue
        lines.append(f"## {title}")
        lines.append("")
        lines.append("| dgp | arm | s | dPR-AUC | 95% CI | rel dPR (%) | "
                     "dROC-AUC | 95% CI | rel dROC (%) | dcooc_path_mean | "
                     "dlatent_corr | n |")
        lines.append("|---|---|---|---|---|---|---|---|---|---|---|---|")
        for r in picked:
            lines.append(
                f"| {r.dgp} | {r.arm} | {r.s:g} | {_fmt4(r.d_pr.mean)} | "
                f"[{_fmt4(r.d_pr.ci_lo)}, {_fmt4(r.d_pr.ci_hi)}] | "
                f"{_fmt1(r.rel_pr_pct)} | {_fmt4(r.d_roc.mean)} | "
                f"[{_fmt4(r.d_roc.ci_lo)}, {_fmt4(r.d_roc.ci_hi)}] | "
                f"{_fmt1(r.rel_roc_pct)} | {_fmt4(r.d_cooc)} | "
                f"{_fmt4(r.d_latent)} | {r.n} |")
        lines.append("")
    if baselines:
        lines.append("## Panel C: Baseline C0 (raw values, s=1)")
        lines.append("")
        lines.append("| dgp | feature set | PR-AUC | ROC-AUC | latent_corr | "
                     "cooc_path_mean | n |")
        lines.append("|---|---|---|---|---|---|---|")
        for b in baselines:
            lines.append(f"| {b.dgp} | {b.feature_set} | {_fmt4(b.pr_auc)} | "
                         f"{_fmt4(b.roc_auc)} | {_fmt4(b.latent_corr)} | "
                         f"{_fmt4(b.cooc_path_mean)} | {b.n} |")
        lines.append("")
    with open(path, "w") as fh:
        fh.write("\n".join(lines))


_ARM_STYLE = {"C1": "tab:blue", "C2": "tab:orange", "C3": "tab:red"}


def write_figures(outdir, rows: list[ReportRow]) -> list[str]:
    """Per (dgp, feature set, metric): relative delta on the left axis,
    path co-usage delta on the right axis, one line per arm."""
    written = []
    cells = sorted({(r.dgp, r.feature_set) for r in rows if r.arm != "C0"})
    for dgp, fs in cells:
        for metric in ("pr", "roc"):
            fig, ax = plt.subplots(figsize=(6.0, 4.0))
            ax2 = ax.twinx()
            for arm in ("C1", "C2", "C3"):
                picked = sorted([r for r in rows
                                 if r.dgp == dgp and r.feature_set == fs
                                 and r.arm == arm], key=lambda r: r.s)
                if not picked:
                    continue
                xs = [r.s for r in picked]
                rel = [r.rel_pr_pct if metric == "pr" else r.rel_roc_pct
                       for r in picked]
                cooc = [r.d_cooc for r in picked]
                color = _ARM_STYLE[arm]
                ax.plot(xs, rel, marker="o", color=color, label=arm)
                ax2.plot(xs, cooc, marker="s", linestyle="--", color=color,
                         alpha=0.45)
            ax.axhline(0.0, color="gray", linewidth=0.8)
            ax.set_xlabel("within-tree sampling rate s")
            ax.set_ylabel(f"relative d{metric.upper()}-AUC vs C0 (%)")
            ax2.set_ylabel("d cooc_path_mean (dashed)")
            ax.set_title(f"dgp {dgp}, {fs}")
            ax.legend(loc="lower right")
            fig.tight_layout()
            name = f"fig_{dgp}_{fs}_{metric}.svg"
            fig.savefig(os.path.join(outdir, name), format="svg",
                        metadata={"Date": None})
            plt.close(fig)
            written.append(name)
    return written


def emit_report(outdir, rows, baselines, records) -> None:
    os.makedirs(outdir, exist_ok=True)
    write_results_csv(os.path.join(outdir, "results.csv"), records)
    write_timings_csv(os.path.join(outdir, "timings.csv"), records)
    write_summary_csv(os.path.join(outdir, "summary.csv"), rows, baselines)
    write_summary_md(os.path.join(outdir, "summary.md"), rows, baselines)
    write_figures(outdir, rows)

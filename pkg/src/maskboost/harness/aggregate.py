"""Pair arm records against matched C0 baselines and summarize."""
import math
from dataclasses import dataclass

import numpy as np

from ..metrics import PairedDeltaSet, paired_delta_ci, relative_delta
from .runner import HarnessError, RunRecord


@dataclass(frozen=True)
class ReportRow:
    dgp: str
    feature_set: str
    arm: str
    s: float
    n: int
    d_pr: PairedDeltaSet
    rel_pr_pct: float
    d_roc: PairedDeltaSet
    rel_roc_pct: float
    d_cooc: float
    d_latent: float


@dataclass(frozen=True)
class BaselineRow:
    dgp: str
    feature_set: str
    n: int
    pr_auc: float
    roc_auc: float
    latent_corr: float
    cooc_path_mean: float


def _delta_stats(deltas) -> PairedDeltaSet:
    d = np.asarray(deltas, dtype=np.float64)
    if d.size >= 2:
        return paired_delta_ci(d)
    mean = float(d.mean())
    return PairedDeltaSet(deltas=d, n=int(d.size), mean=mean, sd=math.nan,
                          se=math.nan, ci_lo=math.nan, ci_hi=math.nan)


def _rel(mean_delta: float, baseline_mean: float) -> float:
    if baseline_mean == 0.0:
        return math.nan
    return relative_delta(mean_delta, baseline_mean)


def aggregate(records: list[RunRecord]):
    """(delta rows, baseline rows). Every arm record must have a C0
    record with the same (dgp, feature set, seed) or aggregation fails."""
    base = {}
    for rec in records:
        if rec.key.arm == "C0":
            base[(rec.key.dgp, rec.key.feature_set, rec.key.seed)] = rec

    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        cell = (rec.key.dgp, rec.key.feature_set, rec.key.arm, rec.key.s)
        groups.setdefault(cell, []).append(rec)

    rows = []
    for (dgp, fs, arm, s), cell_records in sorted(groups.items()):
        cell_records.sort(key=lambda r: r.key.seed)
        paired = []
        for rec in cell_records:
            bkey = (dgp, fs, rec.key.seed)
            if bkey not in base:
                raise HarnessError(
                    f"missing C0 baseline for dgp={dgp} fs={fs} "
                    f"seed={rec.key.seed}")
            paired.append((rec, base[bkey]))
        d_pr = _delta_stats([r.pr_auc - b.pr_auc for r, b in paired])
        d_roc = _delta_stats([r.roc_auc - b.roc_auc for r, b in paired])
        d_cooc = float(np.mean([r.cooc_path_mean - b.cooc_path_mean
                                for r, b in paired]))
        d_latent = float(np.mean([r.latent_corr - b.latent_corr
                                  for r, b in paired]))
        pr_base = float(np.mean([b.pr_auc for _r, b in paired]))
        roc_base = float(np.mean([b.roc_auc for _r, b in paired]))
        rows.append(ReportRow(
            dgp=dgp, feature_set=fs, arm=arm, s=s, n=len(paired),
            d_pr=d_pr, rel_pr_pct=_rel(d_pr.mean, pr_base),
            d_roc=d_roc, rel_roc_pct=_rel(d_roc.mean, roc_base),
            d_cooc=d_cooc, d_latent=d_latent))

    baselines = []
    by_cell: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        if rec.key.arm == "C0":
            by_cell.setdefault((rec.key.dgp, rec.key.feature_set), []).append(rec)
    for (dgp, fs), recs in sorted(by_cell.items()):
        baselines.append(BaselineRow(
            dgp=dgp, feature_set=fs, n=len(recs),
            pr_auc=float(np.mean([r.pr_auc for r in recs])),
            roc_auc=float(np.mean([r.roc_auc for r in recs])),
            latent_corr=float(np.mean([r.latent_corr for r in recs])),
            cooc_path_mean=float(np.mean([r.cooc_path_mean for r in recs]))))
    return rows, baselines

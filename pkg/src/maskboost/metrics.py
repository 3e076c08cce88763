"""Ranking metrics, latent alignment, and paired-delta statistics."""
from dataclasses import dataclass

import numpy as np

Z_95 = 1.96


def _check_two_classes(labels):
    y = np.asarray(labels)
    npos = int((y == 1).sum())
    nneg = int((y == 0).sum())
    if npos + nneg != y.size:
        raise ValueError("labels must be 0/1")
    if npos == 0 or nneg == 0:
        raise ValueError("need at least one positive and one negative")
    return y, npos, nneg


def pr_auc(scores, labels) -> float:
    """Average precision. Tied scores form blocks that share the
    precision observed at the end of their block, so the value does not
    depend on sort stability. Random rankings average the positive rate."""
    s = np.asarray(scores, dtype=np.float64)
    y, npos, _ = _check_two_classes(labels)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    y = y[order]
    cum_tp = np.cumsum(y)
    # block ends: last index of each run of equal scores
    ends = np.flatnonzero(np.append(s[1:] != s[:-1], True))
    tp_at_end = cum_tp[ends]
    precision = tp_at_end / (ends + 1.0)
    tp_in_block = np.diff(np.append(0.0, tp_at_end))
    return float(np.sum(tp_in_block * precision) / npos)


def roc_auc(scores, labels) -> float:
    """Mann-Whitney statistic with half credit for tied scores."""
    s = np.asarray(scores, dtype=np.float64)
    y, npos, nneg = _check_two_classes(labels)
    order = np.argsort(s, kind="stable")
    ranks = np.empty(s.size, dtype=np.float64)
    ss = s[order]
    ends = np.flatnonzero(np.append(ss[1:] != ss[:-1], True))
    starts = np.append(0, ends[:-1] + 1)
    # average 1-based rank within each tie block
    avg = (starts + ends) / 2.0 + 1.0
    block_of = np.repeat(np.arange(len(ends)), ends - starts + 1)
    ranks[order] = avg[block_of]
    rank_sum = float(ranks[np.asarray(labels) == 1].sum())
    return (rank_sum - npos * (npos + 1) / 2.0) / (npos * nneg)


def latent_corr(scores, latent_v) -> float:
    """Pearson correlation between raw model scores and the latent signal."""
    s = np.asarray(scores, dtype=np.float64)
    v = np.asarray(latent_v, dtype=np.float64)
    if s.shape != v.shape or s.size < 2:
        raise ValueError("need two equal-length vectors of size >= 2")
    if np.std(s) == 0.0 or np.std(v) == 0.0:
        raise ValueError("zero variance input")
    return float(np.corrcoef(s, v)[0, 1])


@dataclass(frozen=True)
class PairedDeltaSet:
    deltas: np.ndarray
    n: int
    mean: float
    sd: float
    se: float
    ci_lo: float
    ci_hi: float


def paired_delta_ci(deltas) -> PairedDeltaSet:
    """Normal-approximation 95% CI of a mean paired delta (sd uses ddof=1)."""
    d = np.asarray(deltas, dtype=np.float64)
    if d.size < 2:
        raise ValueError("need at least two paired deltas")
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    se = sd / np.sqrt(d.size)
    return PairedDeltaSet(deltas=d, n=int(d.size), mean=mean, sd=sd, se=se,
                          ci_lo=mean - Z_95 * se, ci_hi=mean + Z_95 * se)


def relative_delta(delta_mean: float, baseline_mean: float) -> float:
    """Percent change of a mean delta relative to its baseline mean."""
    if baseline_mean == 0.0:
        raise ValueError("baseline mean is zero")
    return 100.0 * delta_mean / baseline_mean

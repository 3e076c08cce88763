"""Synthetic cancellation-style datasets.

Two generators produce pairs of primitives that share a strong nuisance
latent while the label depends on a smaller differential latent V:

* continuous generator ("A"): log a = U + V + eps_a, log b = U - V +
  eps_b; the engineered ratio is log a - log b, which cancels U.
* count generator ("B"): a shared exposure E scales two overdispersed
  counts whose rates move with V in opposite directions; the engineered
  feature is a smoothed log rate difference.

Labels are Bernoulli(sigmoid(beta * V + intercept)) with the intercept
calibrated so the positive rate hits a target prevalence. Distractor
columns correlate with the nuisance latent but carry no signal.
"""
import csv
from dataclasses import dataclass, replace

import numpy as np

from .booster.objective import logit, sigmoid
from .data import (ROLE_DISTRACTOR, ROLE_PRIMITIVE_A, ROLE_PRIMITIVE_B,
                   ROLE_RATIO, FeatureMatrix)

DGP_A = "A"
DGP_B = "B"
FEATURE_SET_BASE = "F0"
FEATURE_SET_RATIO = "F1"


@dataclass(frozen=True)
class DgpAParams:
    sigma_u: float = 1.0
    sigma_v: float = 0.5
    sigma_eps: float = 0.1
    beta: float = 4.0
    intercept: float = 0.0

    def __post_init__(self):
        if self.sigma_u <= 0 or self.sigma_v <= 0:
            raise ValueError("latent scales must be positive")
        if self.sigma_eps < 0:
            raise ValueError("sigma_eps must be >= 0")
        for f in (self.beta, self.intercept):
            if not np.isfinite(f):
                raise ValueError("parameters must be finite")


@dataclass(frozen=True)
class DgpBParams:
    mu_e: float = 3.0
    sigma_e: float = 1.0
    sigma_v: float = 0.5
    phi: float = 5.0
    s0: float = 0.5
    beta: float = 4.0
    intercept: float = 0.0

    def __post_init__(self):
        if self.sigma_e <= 0 or self.sigma_v <= 0:
            raise ValueError("latent scales must be positive")
        if self.phi <= 0:
            raise ValueError("dispersion phi must be positive")
        if self.s0 <= 0:
            raise ValueError("smoothing s0 must be positive")


@dataclass(frozen=True)
class DistractorParams:
    p_noise: int = 120
    rho: float = 0.5

    def __post_init__(self):
        if self.p_noise < 0:
            raise ValueError("p_noise must be >= 0")
        if not 0.0 <= self.rho < 1.0:
            raise ValueError("rho must be in [0, 1)")


@dataclass
class GeneratedDataset:
    features: FeatureMatrix
    labels: np.ndarray
    latent_v: np.ndarray
    split: str

    def __post_init__(self):
        if len(self.latent_v) != self.features.n_rows:
            raise ValueError("latent_v length must match rows")
        if len(self.labels) != self.features.n_rows:
            raise ValueError("labels length must match rows")


def calibrate_intercept(beta, latent_sampler, target_pi, rng,
                        n_draws=1_000_000, tol=1e-3, max_steps=200) -> float:
    """Bisect for the intercept c with mean sigmoid(beta*V + c) at the
    target prevalence (the mean is monotone increasing in c)."""
    if not 0.0 < target_pi < 1.0:
        raise ValueError("target prevalence must be in (0, 1)")
    v = np.asarray(latent_sampler(n_draws, rng), dtype=np.float64)
    bv = beta * v
    lo, hi = -60.0, 60.0
    for _ in range(max_steps):
        mid = 0.5 * (lo + hi)
        mean = float(sigmoid(bv + mid).mean())
        if abs(mean - target_pi) <= tol:
            return mid
        if mean < target_pi:
            lo = mid
        else:
            hi = mid
    raise RuntimeError("intercept calibration did not converge")


def _labels(v, beta, intercept, rng):
    p = sigmoid(beta * v + intercept)
    return (rng.random(v.size) < p).astype(np.uint8)


def sample_dgp_a(params: DgpAParams, n: int, rng) -> dict:
    """Raw continuous draws: primitives a, b, ratio r, latents U, V, label y."""
    if n < 1:
        raise ValueError("n must be >= 1")
    u = rng.normal(0.0, params.sigma_u, n)
    v = rng.normal(0.0, params.sigma_v, n)
    eps_a = rng.normal(0.0, params.sigma_eps, n)
    eps_b = rng.normal(0.0, params.sigma_eps, n)
    a = np.exp(u + v + eps_a)
    b = np.exp(u - v + eps_b)
    y = _labels(v, params.beta, params.intercept, rng)
    return {"a": a, "b": b, "r": np.log(a) - np.log(b), "u": u, "v": v, "y": y}


def sample_negbin(mean, phi: float, rng) -> np.ndarray:
    """Negative binomial via gamma-poisson mixture: mean lam, variance
    lam + lam^2/phi."""
    lam = np.asarray(mean, dtype=np.float64)
    rate = rng.gamma(shape=phi, scale=lam / phi)
    return rng.poisson(rate)


def sample_dgp_b(params: DgpBParams, n: int, rng) -> dict:
    """Raw count draws: counts A, B, smoothed log rate difference r,
    exposure E, latent V, label y."""
    if n < 1:
        raise ValueError("n must be >= 1")
    e = np.exp(rng.normal(params.mu_e, params.sigma_e, n))
    v = rng.normal(0.0, params.sigma_v, n)
    count_a = sample_negbin(e * np.exp(v), params.phi, rng).astype(np.float64)
    count_b = sample_negbin(e * np.exp(-v), params.phi, rng).astype(np.float64)
    y = _labels(v, params.beta, params.intercept, rng)
    r = np.log(count_a + params.s0) - np.log(count_b + params.s0)
    return {"a": count_a, "b": count_b, "r": r, "e": e, "v": v, "y": y}


def make_distractors(nuisance, params: DistractorParams, rng) -> np.ndarray:
    """(n, p_noise) noise columns, each correlated rho with the nuisance
    latent and independent of everything else."""
    nuisance = np.asarray(nuisance, dtype=np.float64)
    n = nuisance.size
    z = rng.standard_normal((n, params.p_noise))
    if params.p_noise == 0:
        return z
    std = nuisance.std()
    if std == 0.0:
        centered = np.zeros(n)
    else:
        centered = (nuisance - nuisance.mean()) / std
    return params.rho * centered[:, None] + np.sqrt(1.0 - params.rho ** 2) * z


_PRIMITIVE_NAMES = {DGP_A: ("a", "b"), DGP_B: ("count_a", "count_b")}
_RATIO_NAMES = {DGP_A: "log_ratio", DGP_B: "log_rate_diff"}


def _nuisance_of(dgp: str, draws: dict) -> np.ndarray:
    return draws["u"] if dgp == DGP_A else np.log(draws["e"])


def _draw_block(dgp, params, dparams: DistractorParams, n, rng) -> dict:
    if dgp == DGP_A:
        draws = sample_dgp_a(params, n, rng)
    elif dgp == DGP_B:
        draws = sample_dgp_b(params, n, rng)
    else:
        raise ValueError(f"unknown dgp {dgp!r}")
    draws["noise"] = make_distractors(_nuisance_of(dgp, draws), dparams, rng)
    return draws


def _take(draws: dict, mask) -> dict:
    return {k: v[mask] for k, v in draws.items()}


def _concat(blocks: list[dict]) -> dict:
    return {k: np.concatenate([b[k] for b in blocks]) for k in blocks[0]}


def _draw_test_block(dgp, params, dparams, n_test, pi, rng,
                     max_chunks=1000) -> dict:
    """Rejection-sample until the positive count is exactly round(pi*n)."""
    need_pos = int(round(pi * n_test))
    need_neg = n_test - need_pos
    parts = []
    for _ in range(max_chunks):
        if need_pos == 0 and need_neg == 0:
            break
        blk = _draw_block(dgp, params, dparams, n_test, rng)
        y = blk["y"]
        pos_rank = np.cumsum(y == 1)
        neg_rank = np.cumsum(y == 0)
        take = ((y == 1) & (pos_rank <= need_pos)) | \
               ((y == 0) & (neg_rank <= need_neg))
        need_pos -= int(((y == 1) & take).sum())
        need_neg -= int(((y == 0) & take).sum())
        parts.append(_take(blk, take))
    if need_pos or need_neg:
        raise RuntimeError("test stratification did not fill its quotas")
    return _concat(parts)


def assemble_dataset(dgp: str, draws: dict, feature_set: str,
                     split: str) -> GeneratedDataset:
    """Build the feature table: primitives, distractors, and (for the
    ratio feature set) the engineered column appended last."""
    name_a, name_b = _PRIMITIVE_NAMES[dgp]
    noise = draws["noise"]
    cols = [draws["a"], draws["b"]] + [noise[:, j] for j in range(noise.shape[1])]
    names = [name_a, name_b] + [f"noise_{j:03d}" for j in range(noise.shape[1])]
    roles = [ROLE_PRIMITIVE_A, ROLE_PRIMITIVE_B] + [ROLE_DISTRACTOR] * noise.shape[1]
    if feature_set == FEATURE_SET_RATIO:
        cols.append(draws["r"])
        names.append(_RATIO_NAMES[dgp])
        roles.append(ROLE_RATIO)
    elif feature_set != FEATURE_SET_BASE:
        raise ValueError(f"unknown feature set {feature_set!r}")
    values = np.column_stack(cols)
    fm = FeatureMatrix(values=values, col_names=names, col_roles=roles)
    return GeneratedDataset(features=fm, labels=draws["y"].copy(),
                            latent_v=draws["v"].copy(), split=split)


@dataclass(frozen=True)
class SplitSizes:
    n_train: int = 25000
    n_valid: int = 10000
    n_test: int = 10000

    def __post_init__(self):
        if min(self.n_train, self.n_valid, self.n_test) < 1:
            raise ValueError("split sizes must be positive")


def draw_split_blocks(dgp, params, dparams: DistractorParams,
                      sizes: SplitSizes, pi: float, rng) -> dict:
    """Three disjoint raw-draw blocks from one stream; the test block is
    stratified to an exact positive count."""
    return {
        "train": _draw_block(dgp, params, dparams, sizes.n_train, rng),
        "valid": _draw_block(dgp, params, dparams, sizes.n_valid, rng),
        "test": _draw_test_block(dgp, params, dparams, sizes.n_test, pi, rng),
    }


def make_splits(dgp, params, dparams: DistractorParams, sizes: SplitSizes,
                pi: float, feature_set: str, seed) -> dict:
    """train/valid/test GeneratedDatasets, fully determined by one seed."""
    rng = np.random.default_rng(seed)
    blocks = draw_split_blocks(dgp, params, dparams, sizes, pi, rng)
    return {split: assemble_dataset(dgp, blk, feature_set, split)
            for split, blk in blocks.items()}


def calibrated_params(dgp: str, params, pi: float, rng):
    """Copy of params with the intercept calibrated to the prevalence."""
    sigma_v = params.sigma_v

    def sampler(n, r):
        return r.normal(0.0, sigma_v, n)

    c = calibrate_intercept(params.beta, sampler, pi, rng)
    return replace(params, intercept=c)


def write_dataset_csv(path, datasets: dict[str, GeneratedDataset]) -> None:
    """Columnar export: feature columns, label, latent_v, split."""
    first = next(iter(datasets.values()))
    header = list(first.features.col_names) + ["label", "latent_v", "split"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for ds in datasets.values():
            vals = ds.features.values
            for i in range(ds.features.n_rows):
                row = [repr(float(x)) for x in vals[i]]
                row += [str(int(ds.labels[i])), repr(float(ds.latent_v[i])),
                        ds.split]
                w.writerow(row)


__all__ = [
    "DGP_A", "DGP_B", "FEATURE_SET_BASE", "FEATURE_SET_RATIO",
    "DgpAParams", "DgpBParams", "DistractorParams", "GeneratedDataset",
    "SplitSizes", "calibrate_intercept", "calibrated_params",
    "sample_dgp_a", "sample_dgp_b", "sample_negbin", "make_distractors",
    "assemble_dataset", "draw_split_blocks", "make_splits",
    "write_dataset_csv", "logit",
]

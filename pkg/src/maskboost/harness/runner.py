"""Grid execution.

One cell = (dgp, feature set, arm, s, seed index). The dataset for a
cell depends on (dgp, seed) only, so every arm and both feature sets of
a seed train on common random numbers and paired deltas are meaningful.
Cells are independent jobs; the record list is sorted by key before any
aggregation, so results do not depend on completion order.
"""
import multiprocessing
import os
import time
from dataclasses import dataclass

from .. import datagen
from ..booster.train import train
from ..data import ROLE_PRIMITIVE_A, ROLE_PRIMITIVE_B
from ..introspect import cooc_path_mean
from ..metrics import latent_corr, pr_auc, roc_auc
from ..model_dump import load_dump
from .config import HarnessConfig
from .streams import int_seed_for, rng_for


class HarnessError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class CellKey:
    dgp: str
    feature_set: str
    arm: str
    s: float
    seed: int

    def __post_init__(self):
        if self.arm == "C0" and self.s != 1.0:
            raise ValueError("C0 uses s = 1.0")

    def label(self) -> str:
        return (f"dgp={self.dgp} fs={self.feature_set} arm={self.arm} "
                f"s={self.s:g} seed={self.seed}")


@dataclass(frozen=True)
class RunRecord:
    key: CellKey
    pr_auc: float
    roc_auc: float
    latent_corr: float
    cooc_path_mean: float
    best_iteration: int
    wall_time: float


def arm_rates(arm: str, s: float) -> tuple[float, float]:
    """(colsample_bylevel, colsample_bynode) for an arm; bytree stays 1."""
    if arm == "C0":
        return 1.0, 1.0
    if arm == "C1":
        return s, 1.0
    if arm == "C2":
        return 1.0, s
    if arm == "C3":
        return s, s
    raise ValueError(f"unknown arm {arm!r}")


def cell_keys(cfg: HarnessConfig) -> list[CellKey]:
    """Grid expansion; C0 appears once per (dgp, fs, seed)."""
    keys = []
    for dgp in cfg["dgps"]:
        for fs in cfg["feature_sets"]:
            for seed in range(cfg["seeds"]):
                for arm in cfg["arms"]:
                    if arm == "C0":
                        keys.append(CellKey(dgp, fs, "C0", 1.0, seed))
                    else:
                        for s in cfg["s_values"]:
                            keys.append(CellKey(dgp, fs, arm, s, seed))
    return sorted(keys)


def calibrated_params_for(cfg: HarnessConfig, dgp: str, sigma_u=None):
    """Per-dgp params with a calibrated intercept; the calibration stream
    depends only on the master seed and the dgp."""
    params = cfg.dgp_params(dgp)
    if sigma_u is not None:
        import dataclasses

        params = dataclasses.replace(params, sigma_u=sigma_u)
    rng = rng_for(cfg["master_seed"], "calibrate", dgp)
    return datagen.calibrated_params(dgp, params, cfg["pi"], rng)


def dataset_for(cfg: HarnessConfig, dgp: str, seed: int, feature_set: str,
                params=None, stream_tags=()):
    """train/valid/test datasets for a (dgp, seed) pair; identical draws
    regardless of arm, and of feature set up to the appended ratio."""
    if params is None:
        params = calibrated_params_for(cfg, dgp)
    rng = rng_for(cfg["master_seed"], "dgp", dgp, *stream_tags, seed)
    blocks = datagen.draw_split_blocks(dgp, params, cfg.distractors,
                                       cfg.sizes, cfg["pi"], rng)
    return {split: datagen.assemble_dataset(dgp, blk, feature_set, split)
            for split, blk in blocks.items()}


def run_cell(cfg: HarnessConfig, key: CellKey, params=None,
             stream_tags=()) -> RunRecord:
    """Generate, train, evaluate, and introspect one grid cell."""
    t0 = time.perf_counter()
    ds = dataset_for(cfg, key.dgp, key.seed, key.feature_set,
                     params=params, stream_tags=stream_tags)
    bylevel, bynode = arm_rates(key.arm, key.s)
    train_seed = int_seed_for(cfg["master_seed"], "train", *stream_tags,
                              key.dgp, key.feature_set, key.arm, key.s,
                              key.seed)
    tc = cfg.train_config(seed=train_seed, colsample_bylevel=bylevel,
                          colsample_bynode=bynode)
    model = train(ds["train"].features, ds["train"].labels,
                  ds["valid"].features, ds["valid"].labels, tc)
    test = ds["test"]
    margins = model.predict_margin(test.features)
    dump = load_dump(model.dump_json())
    fm = test.features
    cooc = cooc_path_mean(dump, fm.role_index(ROLE_PRIMITIVE_A),
                          fm.role_index(ROLE_PRIMITIVE_B))
    return RunRecord(
        key=key,
        pr_auc=pr_auc(margins, test.labels),
        roc_auc=roc_auc(margins, test.labels),
        latent_corr=latent_corr(margins, test.latent_v),
        cooc_path_mean=cooc,
        best_iteration=model.best_iteration,
        wall_time=time.perf_counter() - t0,
    )


def _worker(args):
    cfg, key = args
    try:
        return run_cell(cfg, key), None
    except Exception as exc:  # noqa: BLE001 - reported per cell
        return None, (key, f"{type(exc).__name__}: {exc}")


def resolve_workers(cfg: HarnessConfig) -> int:
    w = cfg["workers"]
    if w <= 0:
        w = os.cpu_count() or 1
    return max(1, w)


def run_grid(cfg: HarnessConfig, keys=None, workers=None):
    """Run all cells; returns records sorted by key.

    Raises HarnessError naming every failed cell (no silent drops).
    """
    if keys is None:
        keys = cell_keys(cfg)
    if workers is None:
        workers = resolve_workers(cfg)
    jobs = [(cfg, key) for key in keys]
    if workers > 1 and len(jobs) > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            outcomes = pool.map(_worker, jobs, chunksize=1)
    else:
        outcomes = [_worker(job) for job in jobs]
    failures = [err for _rec, err in outcomes if err is not None]
    if failures:
        lines = "\n".join(f"  {key.label()}: {msg}" for key, msg in failures)
        raise HarnessError(f"{len(failures)} cell(s) failed:\n{lines}")
    records = [rec for rec, _err in outcomes]
    return sorted(records, key=lambda r: r.key)

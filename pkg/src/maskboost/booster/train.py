"""Stagewise boosting with shrinkage and validation early stopping."""
import dataclasses
from dataclasses import dataclass

import numpy as np

from ..data import FeatureMatrix, validate_labels
from .objective import log_loss, logistic_grad_hess, logit, sigmoid
from .splitting import sample_columns, sample_size
from .tree import Tree, grow_tree, presort_columns


@dataclass(frozen=True)
class TrainConfig:
    num_rounds: int = 400
    learning_rate: float = 0.1
    max_depth: int = 6
    reg_lambda: float = 1.0
    gamma: float = 0.0
    min_child_weight: float = 1.0
    colsample_bytree: float = 1.0
    colsample_bylevel: float = 1.0
    colsample_bynode: float = 1.0
    row_subsample: float = 1.0
    early_stop_patience: int = 25
    seed: int = 0

    def __post_init__(self):
        if self.num_rounds < 1:
            raise ValueError("num_rounds must be >= 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        for name in ("colsample_bytree", "colsample_bylevel",
                     "colsample_bynode", "row_subsample"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must be in (0, 1]")
        for name in ("reg_lambda", "gamma", "min_child_weight"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.early_stop_patience < 0:
            raise ValueError("early_stop_patience must be >= 0")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class Ensemble:
    """Boosted model: margins are base_margin plus learning_rate times the
    sum of selected-leaf weights over the first best_iteration trees."""

    trees: list[Tree]
    base_margin: float
    config: TrainConfig
    best_iteration: int
    feature_names: list[str]

    def predict_margin(self, data: FeatureMatrix) -> np.ndarray:
        if list(data.col_names) != list(self.feature_names):
            raise ValueError("feature schema does not match the model")
        xcols = np.ascontiguousarray(data.columns())
        out = np.full(data.n_rows, self.base_margin, dtype=np.float64)
        for tree in self.trees[: self.best_iteration]:
            out += self.config.learning_rate * tree.predict_margin(xcols)
        return out

    def predict_proba(self, data: FeatureMatrix) -> np.ndarray:
        return sigmoid(self.predict_margin(data))

    def dump_json(self) -> str:
        from ..model_dump import ensemble_to_text

        return ensemble_to_text(self)


def predict_margin(model: Ensemble, data: FeatureMatrix) -> np.ndarray:
    return model.predict_margin(data)


def predict_proba(model: Ensemble, data: FeatureMatrix) -> np.ndarray:
    return model.predict_proba(data)


def train(train_data: FeatureMatrix, train_labels, valid_data: FeatureMatrix,
          valid_labels, config: TrainConfig) -> Ensemble:
    """Fit a boosted ensemble; deterministic for a given config.seed.

    Per-round randomness is drawn in a fixed order (row subsample, then
    per-tree columns, then per-level and per-node columns inside the
    grower); rates of 1.0 consume nothing.
    """
    if train_data.n_rows < 1:
        raise ValueError("training set is empty")
    if list(train_data.col_names) != list(valid_data.col_names):
        raise ValueError("train/valid feature schemas differ")
    y = validate_labels(train_labels, train_data.n_rows)
    yv = validate_labels(valid_labels, valid_data.n_rows)

    xcols = np.ascontiguousarray(train_data.columns())
    vxcols = np.ascontiguousarray(valid_data.columns())
    p, n = xcols.shape
    orders0, svals0 = presort_columns(xcols)
    # workspace reused across rounds; the grower partitions it in place
    orders_w = np.empty_like(orders0)
    svals_w = np.empty_like(svals0)
    all_cols = np.arange(p, dtype=np.int64)
    rng = np.random.default_rng(config.seed)

    base = logit(min(max(float(y.mean()), 1e-6), 1.0 - 1e-6))
    margins = np.full(n, base, dtype=np.float64)
    vmargins = np.full(valid_data.n_rows, base, dtype=np.float64)

    trees: list[Tree] = []
    best_loss = np.inf
    best_it = 0
    stale = 0
    for _ in range(config.num_rounds):
        g, h = logistic_grad_hess(margins, y)
        if config.row_subsample < 1.0:
            m = sample_size(config.row_subsample, n)
            rows = rng.choice(n, size=m, replace=False)
            rows.sort()
            keep = np.zeros(n, dtype=bool)
            keep[rows] = True
            in_order = keep[orders0]
            orders = orders0[in_order].reshape(p, m)
            svals = svals0[in_order].reshape(p, m)
        else:
            rows = None
            np.copyto(orders_w, orders0)
            np.copyto(svals_w, svals0)
            orders = orders_w
            svals = svals_w
        tree_cols = sample_columns(all_cols, config.colsample_bytree, rng)
        tree = grow_tree(xcols, svals, orders, g, h, config, rng,
                         tree_cols, rows)
        trees.append(tree)
        margins += config.learning_rate * tree.predict_margin(xcols)
        vmargins += config.learning_rate * tree.predict_margin(vxcols)
        loss = log_loss(vmargins, yv)
        if loss < best_loss:
            best_loss = loss
            best_it = len(trees)
            stale = 0
        else:
            stale += 1
            if stale >= config.early_stop_patience:
                break

    return Ensemble(trees=trees[:best_it], base_margin=base, config=config,
                    best_iteration=best_it,
                    feature_names=list(train_data.col_names))

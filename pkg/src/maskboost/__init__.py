"""Gradient boosted trees with intra-tree column subsampling, synthetic
cancellation-style data generators, and a paired benchmark harness."""
from ._kernels import BACKEND as KERNEL_BACKEND
from .booster import (Ensemble, TrainConfig, Tree, build_tree, leaf_weight,
                      logistic_grad_hess, predict_margin, predict_proba,
                      sample_columns, split_gain, train)
from .data import FeatureMatrix
from .introspect import (cooc_path_mean, load_dump, node_pair_availability,
                         path_availability, write_dump)
from .metrics import (PairedDeltaSet, latent_corr, paired_delta_ci, pr_auc,
                      relative_delta, roc_auc)

__version__ = "0.1.0"

__all__ = [
    "Ensemble", "FeatureMatrix", "KERNEL_BACKEND", "PairedDeltaSet",
    "TrainConfig", "Tree", "build_tree", "cooc_path_mean", "latent_corr",
    "leaf_weight", "load_dump", "logistic_grad_hess",
    "node_pair_availability", "paired_delta_ci", "path_availability",
    "pr_auc", "predict_margin", "predict_proba", "relative_delta",
    "roc_auc", "sample_columns", "split_gain", "train", "write_dump",
]

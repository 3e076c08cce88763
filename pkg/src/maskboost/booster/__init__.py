from .objective import log_loss, logistic_grad_hess, logit, sigmoid
from .splitting import leaf_weight, sample_columns, split_gain
from .train import Ensemble, TrainConfig, predict_margin, predict_proba, train
from .tree import Tree, build_tree

__all__ = [
    "Ensemble", "TrainConfig", "Tree", "build_tree", "leaf_weight",
    "log_loss", "logistic_grad_hess", "logit", "predict_margin",
    "predict_proba", "sample_columns", "sigmoid", "split_gain", "train",
]

"""Structural analysis of dumped ensembles.

The central quantity is path co-usage: how often two designated features
both appear among the split features on a root-to-leaf path, weighting
each leaf by its cover. The default averages cover-weighted indicators
within each tree and then takes an unweighted mean over trees; a pooled
variant (one cover-weighted average over all leaves of all trees) is
available for sensitivity checks.
"""
import numpy as np

from .model_dump import DumpError, DumpTree, ModelDump, load_dump, write_dump

__all__ = ["cooc_path_mean", "path_availability", "node_pair_availability",
           "mean_tree_depth", "load_dump", "write_dump", "ModelDump",
           "DumpError"]


def _tree_cooc(tree: DumpTree, feat_i: int, feat_j: int):
    """(cover on paths containing both, total leaf cover) for one tree."""
    both = 0.0
    total = 0.0
    stack = [(0, False, False)]
    while stack:
        nid, has_i, has_j = stack.pop()
        f = int(tree.feature[nid])
        if f < 0:
            cov = float(tree.cover[nid])
            total += cov
            if has_i and has_j:
                both += cov
        else:
            hi = has_i or f == feat_i
            hj = has_j or f == feat_j
            stack.append((int(tree.left[nid]), hi, hj))
            stack.append((int(tree.right[nid]), hi, hj))
    return both, total


def cooc_path_mean(dump: ModelDump, feat_i: int, feat_j: int,
                   pooled: bool = False) -> float:
    """Cover-weighted frequency of joint path usage of two features.

    Single-leaf trees contribute 0 to the per-tree mean (and only
    denominator mass to the pooled variant).
    """
    if not dump.trees:
        raise DumpError("dump contains no trees")
    if pooled:
        both_all = 0.0
        total_all = 0.0
        for tree in dump.trees:
            both, total = _tree_cooc(tree, feat_i, feat_j)
            both_all += both
            total_all += total
        return both_all / total_all
    acc = 0.0
    for tree in dump.trees:
        both, total = _tree_cooc(tree, feat_i, feat_j)
        acc += both / total
    return acc / len(dump.trees)


def path_availability(s: float, length: int) -> float:
    """Chance a feature sampled per node at rate s shows up at least once
    along a path of the given length: 1 - (1-s)^L."""
    if not 0.0 < s <= 1.0:
        raise ValueError("s must be in (0, 1]")
    if length < 1:
        raise ValueError("path length must be >= 1")
    return 1.0 - (1.0 - s) ** length


def node_pair_availability(s: float, p: int) -> float:
    """Exact chance that a without-replacement node sample of
    max(1, round(s*p)) out of p features contains two designated ones;
    approaches s^2 for large p."""
    if not 0.0 < s <= 1.0:
        raise ValueError("s must be in (0, 1]")
    if p < 2:
        raise ValueError("need at least two features")
    k = max(1, int(round(s * p)))
    return k * (k - 1) / (p * (p - 1))


def mean_tree_depth(dump: ModelDump) -> float:
    if not dump.trees:
        raise DumpError("dump contains no trees")
    return float(np.mean([t.depth() for t in dump.trees]))

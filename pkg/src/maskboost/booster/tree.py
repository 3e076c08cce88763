"""Level-wise exact-greedy tree grower with nested column subsampling.

Column subsets are drawn once per tree, once per depth level (from the
tree subset), and once per node (from the level subset). Split search
runs in the selected kernel backend over per-column presorted segments;
children are formed by stable partition, so no re-sorting happens during
growth.
"""
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from .splitting import leaf_weight, sample_columns


@dataclass
class Tree:
    """Array-of-nodes binary tree. feature = -1 marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    cover: np.ndarray
    weight: np.ndarray
    gain: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def is_leaf(self, nid: int) -> bool:
        return self.feature[nid] < 0

    def depth(self) -> int:
        """Longest root-to-leaf path, in edges."""
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        best = 0
        for nid in range(self.n_nodes):
            d = depths[nid]
            if self.feature[nid] >= 0:
                depths[self.left[nid]] = d + 1
                depths[self.right[nid]] = d + 1
            elif d > best:
                best = int(d)
        return best

    def predict_margin(self, xcols: np.ndarray) -> np.ndarray:
        """Unscaled leaf weights for every row of (p, n) column data."""
        n = xcols.shape[1]
        cur = np.zeros(n, dtype=np.int64)
        pending = np.flatnonzero(self.feature[cur] >= 0)
        while pending.size:
            nodes = cur[pending]
            v = xcols[self.feature[nodes], pending]
            cur[pending] = np.where(v < self.threshold[nodes],
                                    self.left[nodes], self.right[nodes])
            pending = pending[self.feature[cur[pending]] >= 0]
        return self.weight[cur]

    @classmethod
    def from_node_lists(cls, feature, threshold, left, right, cover, weight,
                        gain=None):
        n = len(feature)
        if gain is None:
            gain = [np.nan] * n
        return cls(
            feature=np.asarray(feature, dtype=np.int32),
            threshold=np.asarray(threshold, dtype=np.float64),
            left=np.asarray(left, dtype=np.int32),
            right=np.asarray(right, dtype=np.int32),
            cover=np.asarray(cover, dtype=np.float64),
            weight=np.asarray(weight, dtype=np.float64),
            gain=np.asarray(gain, dtype=np.float64),
        )


class _Growing:
    """Mutable node table while a tree is being grown."""

    def __init__(self):
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.cover = []
        self.weight = []
        self.gain = []

    def new_node(self) -> int:
        nid = len(self.feature)
        self.feature.append(-1)
        self.threshold.append(np.nan)
        self.left.append(-1)
        self.right.append(-1)
        self.cover.append(0.0)
        self.weight.append(0.0)
        self.gain.append(np.nan)
        return nid

    def finish(self) -> Tree:
        return Tree.from_node_lists(self.feature, self.threshold, self.left,
                                    self.right, self.cover, self.weight,
                                    self.gain)


def presort_columns(xcols: np.ndarray):
    """Per-column stable sort order and sorted values for (p, n) data."""
    orders = np.argsort(xcols, axis=1, kind="stable").astype(np.int32)
    svals = np.take_along_axis(xcols, orders, axis=1)
    return orders, np.ascontiguousarray(svals)


def grow_tree(xcols, svals, orders, grad, hess, config, rng,
              tree_cols, rows=None) -> Tree:
    """Grow one tree. svals/orders are consumed (partitioned in place)."""
    if rows is None:
        gsum = float(np.sum(grad[orders[tree_cols[0]]]))
        hsum = float(np.sum(hess[orders[tree_cols[0]]]))
    else:
        gsum = float(np.sum(grad[rows]))
        hsum = float(np.sum(hess[rows]))

    nodes = _Growing()
    root = nodes.new_node()
    nodes.cover[root] = hsum
    n_seg = orders.shape[1]
    frontier = [(root, 0, n_seg, gsum, hsum)]
    depth = 0
    go_left = np.zeros(grad.shape[0], dtype=np.uint8)
    lam = config.reg_lambda

    while frontier:
        if depth >= config.max_depth:
            for nid, _s, _e, g, h in frontier:
                nodes.weight[nid] = leaf_weight(g, h, lam)
            break

        k = len(frontier)
        if config.colsample_bylevel < 1.0:
            level_cols = sample_columns(tree_cols, config.colsample_bylevel, rng)
        else:
            level_cols = tree_cols
        col_mask = np.zeros((k, xcols.shape[0]), dtype=np.uint8)
        if config.colsample_bynode < 1.0:
            for i in range(k):
                col_mask[i, sample_columns(level_cols, config.colsample_bynode, rng)] = 1
        else:
            col_mask[:, level_cols] = 1

        seg_start = np.array([f[1] for f in frontier], dtype=np.int64)
        seg_end = np.array([f[2] for f in frontier], dtype=np.int64)
        node_g = np.array([f[3] for f in frontier], dtype=np.float64)
        node_h = np.array([f[4] for f in frontier], dtype=np.float64)
        out_col = np.empty(k, dtype=np.int32)
        out_thresh = np.empty(k, dtype=np.float64)
        out_gain = np.empty(k, dtype=np.float64)
        out_gl = np.empty(k, dtype=np.float64)
        out_hl = np.empty(k, dtype=np.float64)
        out_nleft = np.empty(k, dtype=np.int64)
        _kernels.scan_node_splits(svals, orders, grad, hess, seg_start, seg_end,
                                  node_g, node_h, col_mask,
                                  lam, config.gamma, config.min_child_weight,
                                  out_col, out_thresh, out_gain, out_gl,
                                  out_hl, out_nleft)

        splitters = [i for i in range(k) if out_col[i] >= 0 and out_gain[i] > 0.0]
        for i in range(k):
            nid, s, e, g, h = frontier[i]
            if i not in splitters:
                nodes.weight[nid] = leaf_weight(g, h, lam)
        if not splitters:
            break

        for i in splitters:
            _nid, s, _e, _g, _h = frontier[i]
            col = int(out_col[i])
            go_left[orders[col, s:s + int(out_nleft[i])]] = 1
        _kernels.partition_segments(
            svals, orders, go_left,
            np.array([frontier[i][1] for i in splitters], dtype=np.int64),
            np.array([frontier[i][2] for i in splitters], dtype=np.int64),
            tree_cols.astype(np.int32))

        next_frontier = []
        for i in splitters:
            nid, s, e, g, h = frontier[i]
            nl = int(out_nleft[i])
            gl, hl = float(out_gl[i]), float(out_hl[i])
            lid = nodes.new_node()
            rid = nodes.new_node()
            nodes.feature[nid] = int(out_col[i])
            nodes.threshold[nid] = float(out_thresh[i])
            nodes.left[nid] = lid
            nodes.right[nid] = rid
            nodes.gain[nid] = float(out_gain[i])
            nodes.cover[lid] = hl
            nodes.cover[rid] = h - hl
            go_left[orders[int(out_col[i]), s:s + nl]] = 0
            next_frontier.append((lid, s, s + nl, gl, hl))
            next_frontier.append((rid, s + nl, e, g - gl, h - hl))
        frontier = next_frontier
        depth += 1

    return nodes.finish()


def build_tree(grad, hess, data, config, rng) -> Tree:
    """Grow a single tree on explicit per-row gradient statistics."""
    grad = np.ascontiguousarray(grad, dtype=np.float64)
    hess = np.ascontiguousarray(hess, dtype=np.float64)
    xcols = np.ascontiguousarray(data.columns())
    if xcols.shape[1] < 1:
        raise ValueError("need at least one row")
    all_cols = np.arange(xcols.shape[0], dtype=np.int64)
    tree_cols = sample_columns(all_cols, config.colsample_bytree, rng)
    orders, svals = presort_columns(xcols)
    return grow_tree(xcols, svals, orders, grad, hess, config, rng, tree_cols)

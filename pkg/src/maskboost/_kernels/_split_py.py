"""Pure-numpy split kernels (fallback backend).

Arithmetic is arranged to match the compiled kernel operation for
operation: cumulative sums are sequential left-to-right, gains use the
same expression tree, and ties resolve to the first (lowest-threshold)
candidate within a column.
"""
import numpy as np


def scan_node_splits(svals, orders, grad, hess, seg_start, seg_end,
                     node_gsum, node_hsum, col_mask,
                     reg_lambda, gamma, min_child_weight,
                     out_feature, out_threshold, out_gain,
                     out_gl, out_hl, out_nleft):
    """Find the best (column, threshold) for each frontier node.

    svals/orders are (p, n) arrays holding, per column, the feature
    values and row ids sorted ascending within each node segment.
    Nodes with no admissible split get feature -1 and gain -inf.
    """
    n_nodes, p = col_mask.shape
    for nd in range(n_nodes):
        s = int(seg_start[nd])
        e = int(seg_end[nd])
        m = e - s
        best_gain = -np.inf
        best_col = -1
        best_thresh = np.nan
        best_gl = 0.0
        best_hl = 0.0
        best_nleft = 0
        if m >= 2:
            gtot = node_gsum[nd]
            htot = node_hsum[nd]
            dpar = htot + reg_lambda
            parent = gtot * gtot / dpar if dpar > 0.0 else 0.0
            for col in range(p):
                if not col_mask[nd, col]:
                    continue
                vals = svals[col, s:e]
                idx = orders[col, s:e]
                gl = np.cumsum(grad[idx])[:-1]
                hl = np.cumsum(hess[idx])[:-1]
                gr = gtot - gl
                hr = htot - hl
                thresh = 0.5 * (vals[:-1] + vals[1:])
                # a boundary is admissible when the midpoint strictly
                # separates the adjacent values and both children pass the
                # hessian-mass floor
                valid = (vals[:-1] < thresh) & (hl >= min_child_weight) \
                    & (hr >= min_child_weight)
                if not valid.any():
                    continue
                dl = hl + reg_lambda
                dr = hr + reg_lambda
                with np.errstate(divide="ignore", invalid="ignore"):
                    sl = np.where(dl > 0.0, gl * gl / dl, 0.0)
                    sr = np.where(dr > 0.0, gr * gr / dr, 0.0)
                gain = 0.5 * (sl + sr - parent) - gamma
                gain[~valid] = -np.inf
                k = int(np.argmax(gain))
                if gain[k] > best_gain:
                    best_gain = gain[k]
                    best_col = col
                    best_thresh = thresh[k]
                    best_gl = gl[k]
                    best_hl = hl[k]
                    best_nleft = k + 1
        out_feature[nd] = best_col
        out_threshold[nd] = best_thresh
        out_gain[nd] = best_gain
        out_gl[nd] = best_gl
        out_hl[nd] = best_hl
        out_nleft[nd] = best_nleft


def partition_segments(svals, orders, go_left, seg_start, seg_end, cols):
    """Stable in-place partition of each column's segment by go_left."""
    for col in cols:
        c = int(col)
        for nd in range(len(seg_start)):
            s = int(seg_start[nd])
            e = int(seg_end[nd])
            idx = orders[c, s:e]
            vals = svals[c, s:e]
            mask = go_left[idx].astype(bool)
            orders[c, s:e] = np.concatenate([idx[mask], idx[~mask]])
            svals[c, s:e] = np.concatenate([vals[mask], vals[~mask]])

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled split kernels. Mirrors _split_py operation for operation."""

import numpy as np

cimport numpy as cnp
from libc.math cimport NAN

cnp.import_array()


def scan_node_splits(const double[:, ::1] svals,
                     const int[:, ::1] orders,
                     const double[::1] grad,
                     const double[::1] hess,
                     const long long[::1] seg_start,
                     const long long[::1] seg_end,
                     const double[::1] node_gsum,
                     const double[::1] node_hsum,
                     const unsigned char[:, ::1] col_mask,
                     double reg_lambda, double gamma, double min_child_weight,
                     int[::1] out_feature, double[::1] out_threshold,
                     double[::1] out_gain, double[::1] out_gl,
                     double[::1] out_hl, long long[::1] out_nleft):
    cdef Py_ssize_t n_nodes = col_mask.shape[0]
    cdef Py_ssize_t p = col_mask.shape[1]
    cdef Py_ssize_t nd, col, k, s, e, row
    cdef double gtot, htot, parent, dpar
    cdef double gl, hl, gr, hr, dl, dr, sl, sr, gain, v, prev, thresh
    cdef double best_gain, best_thresh, best_gl, best_hl
    cdef Py_ssize_t best_col, best_nleft
    cdef double neg_inf = -np.inf

    with nogil:
        for nd in range(n_nodes):
            s = seg_start[nd]
            e = seg_end[nd]
            best_gain = neg_inf
            best_col = -1
            best_thresh = 0.0
            best_gl = 0.0
            best_hl = 0.0
            best_nleft = 0
            if e - s >= 2:
                gtot = node_gsum[nd]
                htot = node_hsum[nd]
                dpar = htot + reg_lambda
                parent = gtot * gtot / dpar if dpar > 0.0 else 0.0
                for col in range(p):
                    if col_mask[nd, col] == 0:
                        continue
                    gl = 0.0
                    hl = 0.0
                    prev = svals[col, s]
                    for k in range(s + 1, e):
                        row = orders[col, k - 1]
                        gl = gl + grad[row]
                        hl = hl + hess[row]
                        v = svals[col, k]
                        if v != prev:
                            thresh = 0.5 * (prev + v)
                            hr = htot - hl
                            if prev < thresh and hl >= min_child_weight \
                                    and hr >= min_child_weight:
                                gr = gtot - gl
                                dl = hl + reg_lambda
                                dr = hr + reg_lambda
                                sl = gl * gl / dl if dl > 0.0 else 0.0
                                sr = gr * gr / dr if dr > 0.0 else 0.0
                                gain = 0.5 * (sl + sr - parent) - gamma
                                if gain > best_gain:
                                    best_gain = gain
                                    best_col = col
                                    best_thresh = thresh
                                    best_gl = gl
                                    best_hl = hl
                                    best_nleft = k - s
                            prev = v
            out_feature[nd] = <int> best_col
            out_threshold[nd] = best_thresh if best_col >= 0 else NAN
            out_gain[nd] = best_gain
            out_gl[nd] = best_gl
            out_hl[nd] = best_hl
            out_nleft[nd] = best_nleft


def partition_segments(double[:, ::1] svals,
                       int[:, ::1] orders,
                       const unsigned char[::1] go_left,
                       const long long[::1] seg_start,
                       const long long[::1] seg_end,
                       const int[::1] cols):
    cdef Py_ssize_t n_cols = cols.shape[0]
    cdef Py_ssize_t n_nodes = seg_start.shape[0]
    cdef Py_ssize_t ci, nd, c, s, e, k, wl, wr, m
    cdef int row
    cdef cnp.ndarray[cnp.int32_t, ndim=1] tmp_i_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tmp_v_arr
    cdef Py_ssize_t max_m = 0

    for nd in range(n_nodes):
        m = seg_end[nd] - seg_start[nd]
        if m > max_m:
            max_m = m
    tmp_i_arr = np.empty(max_m, dtype=np.int32)
    tmp_v_arr = np.empty(max_m, dtype=np.float64)
    cdef int[::1] tmp_i = tmp_i_arr
    cdef double[::1] tmp_v = tmp_v_arr

    with nogil:
        for ci in range(n_cols):
            c = cols[ci]
            for nd in range(n_nodes):
                s = seg_start[nd]
                e = seg_end[nd]
                m = e - s
                wl = 0
                wr = 0
                for k in range(s, e):
                    row = orders[c, k]
                    if go_left[row]:
                        orders[c, s + wl] = row
                        svals[c, s + wl] = svals[c, k]
                        wl += 1
                    else:
                        tmp_i[wr] = row
                        tmp_v[wr] = svals[c, k]
                        wr += 1
                for k in range(wr):
                    orders[c, s + wl + k] = tmp_i[k]
                    svals[c, s + wl + k] = tmp_v[k]

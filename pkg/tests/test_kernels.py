"""Backend contract: numpy and compiled kernels agree with each other and
with a brute-force enumeration of every (feature, midpoint) candidate."""
import numpy as np
import pytest

from maskboost._kernels import _split_py
from maskboost.booster.splitting import split_gain
from maskboost.booster.tree import presort_columns

from conftest import random_instance

try:
    from maskboost._kernels import _split_cy
    BACKENDS = [("python", _split_py), ("cython", _split_cy)]
except ImportError:
    BACKENDS = [("python", _split_py)]


def run_scan(impl, x, g, h, lam=1.0, gamma=0.0, mcw=0.0, col_mask=None):
    xcols = np.ascontiguousarray(x.T)
    p, n = xcols.shape
    orders, svals = presort_columns(xcols)
    if col_mask is None:
        col_mask = np.ones((1, p), dtype=np.uint8)
    out = dict(
        feature=np.empty(1, np.int32), threshold=np.empty(1),
        gain=np.empty(1), gl=np.empty(1), hl=np.empty(1),
        nleft=np.empty(1, np.int64))
    impl.scan_node_splits(
        svals, orders, np.ascontiguousarray(g), np.ascontiguousarray(h),
        np.array([0], dtype=np.int64), np.array([n], dtype=np.int64),
        np.array([g.sum()]), np.array([h.sum()]), col_mask,
        lam, gamma, mcw,
        out["feature"], out["threshold"], out["gain"], out["gl"],
        out["hl"], out["nleft"])
    return {k: v[0] for k, v in out.items()}


def brute_best_split(x, g, h, lam=1.0, gamma=0.0, mcw=0.0):
    """Exhaustive candidate enumeration, lowest (column, threshold) wins ties."""
    best = (-np.inf, -1, np.nan)
    gtot, htot = g.sum(), h.sum()
    for col in range(x.shape[1]):
        uniq = np.unique(x[:, col])
        for lo, hi in zip(uniq[:-1], uniq[1:]):
            t = 0.5 * (lo + hi)
            left = x[:, col] < t
            gl, hl = g[left].sum(), h[left].sum()
            if hl < mcw or (htot - hl) < mcw:
                continue
            gain = split_gain(gl, hl, gtot - gl, htot - hl, lam, gamma)
            if gain > best[0]:
                best = (gain, col, t)
    return best


@pytest.mark.parametrize("name,impl", BACKENDS)
@pytest.mark.parametrize("n_distinct", [None, 5])
def test_scan_matches_brute_force(name, impl, n_distinct, rng):
    for _ in range(25):
        n = int(rng.integers(3, 64))
        p = int(rng.integers(1, 5))
        x, g, h = random_instance(rng, n, p, n_distinct)
        got = run_scan(impl, x, g, h)
        gain, col, thresh = brute_best_split(x, g, h)
        if gain == -np.inf:
            assert got["feature"] == -1
            continue
        assert got["feature"] == col
        assert got["threshold"] == pytest.approx(thresh, abs=0)
        assert got["gain"] == pytest.approx(gain, rel=1e-12)
        left = x[:, col] < thresh
        assert got["nleft"] == left.sum()
        assert got["gl"] == pytest.approx(g[left].sum(), rel=1e-12)
        assert got["hl"] == pytest.approx(h[left].sum(), rel=1e-12)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_scan_respects_min_child_weight(name, impl, rng):
    for _ in range(10):
        x, g, h = random_instance(rng, 20, 3)
        mcw = 1.5
        got = run_scan(impl, x, g, h, mcw=mcw)
        gain, col, thresh = brute_best_split(x, g, h, mcw=mcw)
        if gain == -np.inf:
            assert got["feature"] == -1
        else:
            assert (got["feature"], got["threshold"]) == (col, thresh)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_scan_constant_columns_yield_no_split(name, impl):
    x = np.full((10, 3), 2.5)
    g = np.ones(10)
    h = np.ones(10)
    got = run_scan(impl, x, g, h)
    assert got["feature"] == -1
    assert got["gain"] == -np.inf


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_scan_honors_column_mask(name, impl, rng):
    x, g, h = random_instance(rng, 40, 4)
    full = run_scan(impl, x, g, h)
    mask = np.ones((1, 4), dtype=np.uint8)
    mask[0, full["feature"]] = 0
    masked = run_scan(impl, x, g, h, col_mask=mask)
    assert masked["feature"] != full["feature"]
    assert masked["gain"] <= full["gain"]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
def test_backends_bit_identical(rng):
    for _ in range(40):
        n = int(rng.integers(3, 200))
        p = int(rng.integers(1, 8))
        x, g, h = random_instance(rng, n, p)
        a = run_scan(_split_py, x, g, h, lam=0.7, gamma=0.1, mcw=0.5)
        b = run_scan(_split_cy, x, g, h, lam=0.7, gamma=0.1, mcw=0.5)
        assert a["feature"] == b["feature"]
        assert a["nleft"] == b["nleft"]
        for key in ("threshold", "gain", "gl", "hl"):
            if np.isnan(a[key]) and np.isnan(b[key]):
                continue
            assert a[key] == b[key], key


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_partition_is_stable(name, impl, rng):
    n, p = 30, 3
    x = rng.normal(size=(p, n))
    orders, svals = presort_columns(np.ascontiguousarray(x))
    go_left = (rng.random(n) < 0.5).astype(np.uint8)
    nleft = int(go_left.sum())
    expect_orders = []
    expect_svals = []
    for c in range(p):
        idx = orders[c]
        m = go_left[idx].astype(bool)
        expect_orders.append(np.concatenate([idx[m], idx[~m]]))
        expect_svals.append(np.concatenate([svals[c][m], svals[c][~m]]))
    impl.partition_segments(svals, orders, go_left,
                            np.array([0], dtype=np.int64),
                            np.array([n], dtype=np.int64),
                            np.arange(p, dtype=np.int32))
    for c in range(p):
        assert (orders[c] == expect_orders[c]).all()
        assert (svals[c] == expect_svals[c]).all()
        # each child segment stays sorted
        assert (np.diff(svals[c][:nleft]) >= 0).all()
        assert (np.diff(svals[c][nleft:]) >= 0).all()

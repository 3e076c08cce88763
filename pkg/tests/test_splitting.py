import numpy as np
import pytest

from maskboost.booster.splitting import leaf_weight, sample_columns, split_gain


def test_split_gain_hand_values():
    assert split_gain(-2, 1, 2, 1, 1.0, 0.0) == pytest.approx(2.0)
    assert split_gain(-2, 1, 2, 1, 1.0, 3.0) == pytest.approx(-1.0)


def test_split_gain_empty_side_is_no_split():
    # an empty right child leaves the score unchanged
    assert split_gain(1.5, 2.0, 0.0, 0.0, 1.0, 0.0) == pytest.approx(0.0)
    assert split_gain(1.5, 2.0, 0.0, 0.0, 0.0, 0.0) == pytest.approx(0.0)


def test_leaf_weight_values():
    assert leaf_weight(1.0, 1.0, 1.0) == pytest.approx(-0.5)
    assert leaf_weight(0.0, 3.7, 0.4) == 0.0
    assert leaf_weight(-3.0, 2.0, 1.0) == pytest.approx(1.0)
    assert leaf_weight(5.0, 0.0, 0.0) == 0.0


def test_sample_columns_rate_one_is_identity(rng):
    cols = np.arange(17)
    out = sample_columns(cols, 1.0, rng)
    assert out is cols
    # and consumes no randomness
    before = rng.bit_generator.state["state"]["state"]
    sample_columns(cols, 1.0, rng)
    assert rng.bit_generator.state["state"]["state"] == before


def test_sample_columns_sizes(rng):
    cols = np.arange(122)
    out = sample_columns(cols, 0.4, rng)
    assert len(out) == 49  # round(0.4 * 122)
    assert len(np.unique(out)) == len(out)
    assert np.isin(out, cols).all()
    assert (np.diff(out) > 0).all()


def test_sample_columns_floor_of_one(rng):
    out = sample_columns(np.array([7]), 0.4, rng)
    assert out.tolist() == [7]


def test_sample_columns_nested_subsets(rng):
    cols = np.arange(60)
    tree = sample_columns(cols, 0.8, rng)
    level = sample_columns(tree, 0.5, rng)
    node = sample_columns(level, 0.5, rng)
    assert np.isin(level, tree).all()
    assert np.isin(node, level).all()
    assert len(tree) == 48 and len(level) == 24 and len(node) == 12


def test_sample_columns_deterministic():
    a = sample_columns(np.arange(50), 0.3, np.random.default_rng(99))
    b = sample_columns(np.arange(50), 0.3, np.random.default_rng(99))
    assert (a == b).all()


def test_sample_columns_rejects_bad_inputs(rng):
    with pytest.raises(ValueError):
        sample_columns(np.array([], dtype=int), 0.5, rng)
    with pytest.raises(ValueError):
        sample_columns(np.arange(3), 0.0, rng)
    with pytest.raises(ValueError):
        sample_columns(np.arange(3), 1.2, rng)


def test_sample_columns_is_uniform(rng):
    # every column should be picked at roughly the sampling rate
    cols = np.arange(10)
    counts = np.zeros(10)
    trials = 4000
    for _ in range(trials):
        counts[sample_columns(cols, 0.4, rng)] += 1
    freq = counts / trials
    assert np.abs(freq - 0.4).max() < 0.04

import numpy as np
import pytest

from maskboost.data import FeatureMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def toy_matrix(values, names=None, roles=None) -> FeatureMatrix:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    if names is None:
        names = [f"f{i}" for i in range(values.shape[1])]
    return FeatureMatrix(values=values, col_names=names, col_roles=roles)


def random_instance(rng, n_rows, n_cols, n_distinct=None):
    """Small split-finding instance: features, gradients, hessians."""
    if n_distinct is None:
        x = rng.normal(size=(n_rows, n_cols))
    else:
        x = rng.integers(0, n_distinct, size=(n_rows, n_cols)).astype(float)
    g = rng.normal(size=n_rows)
    h = rng.uniform(0.01, 1.0, size=n_rows)
    return x, g, h

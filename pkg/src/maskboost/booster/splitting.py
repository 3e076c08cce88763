"""Split scoring and column subsampling primitives."""
import numpy as np


def split_gain(g_left, h_left, g_right, h_right, reg_lambda, gamma) -> float:
    """Structure-score gain of a candidate partition.

    A side with zero hessian mass and zero regularization contributes 0
    by convention (an empty side therefore yields gain -gamma).
    """

    def side(g, h):
        d = h + reg_lambda
        return g * g / d if d > 0.0 else 0.0

    parent = side(g_left + g_right, h_left + h_right)
    return 0.5 * (side(g_left, h_left) + side(g_right, h_right) - parent) - gamma


def leaf_weight(g: float, h: float, reg_lambda: float) -> float:
    """Newton-step leaf value -G/(H+lambda); 0 when the denominator is 0."""
    d = h + reg_lambda
    if d <= 0.0:
        return 0.0
    return -g / d


def sample_size(rate: float, n: int) -> int:
    return max(1, int(round(rate * n)))


def sample_columns(candidates: np.ndarray, rate: float, rng) -> np.ndarray:
    """Uniform subsample of columns, without replacement.

    rate=1 returns the candidates unchanged and consumes no randomness,
    so a no-subsampling configuration is a true identity. The result is
    sorted ascending; at least one column is always kept.
    """
    candidates = np.asarray(candidates)
    if candidates.size == 0:
        raise ValueError("candidate column set is empty")
    if not 0.0 < rate <= 1.0:
        raise ValueError("rate must be in (0, 1]")
    if rate == 1.0:
        return candidates
    k = sample_size(rate, candidates.size)
    pick = rng.choice(candidates.size, size=k, replace=False)
    pick.sort()
    return candidates[pick]

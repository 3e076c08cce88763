import numpy as np
import pytest

from maskboost.metrics import (latent_corr, paired_delta_ci, pr_auc,
                               relative_delta, roc_auc)


def brute_pr_auc(scores, labels):
    """Mean, over positives, of precision at the end of the positive's
    tied block (count with score >= mine)."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    precs = []
    for i in np.flatnonzero(labels == 1):
        at_or_above = scores >= scores[i]
        precs.append((labels[at_or_above] == 1).sum() / at_or_above.sum())
    return float(np.mean(precs))


def brute_roc_auc(scores, labels):
    scores = np.asarray(scores, dtype=float)
    pos = scores[np.asarray(labels) == 1]
    neg = scores[np.asarray(labels) == 0]
    wins = 0.0
    for sp in pos:
        for sn in neg:
            if sp > sn:
                wins += 1.0
            elif sp == sn:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def brute_ci(deltas):
    import statistics

    mean = statistics.mean(deltas)
    sd = statistics.stdev(deltas)
    se = sd / len(deltas) ** 0.5
    return mean, sd, se, mean - 1.96 * se, mean + 1.96 * se


def test_pr_auc_perfect_ranking():
    assert pr_auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0


def test_pr_auc_hand_value():
    assert pr_auc([0.9, 0.8, 0.7, 0.6], [1, 0, 1, 0]) == pytest.approx((1 + 2 / 3) / 2)


def test_pr_auc_all_tied_equals_prevalence():
    labels = np.array([1, 0, 0, 0, 1, 0, 0, 0, 0, 0])
    assert pr_auc(np.zeros(10), labels) == pytest.approx(0.2)


def test_pr_auc_requires_both_classes():
    with pytest.raises(ValueError):
        pr_auc([0.1, 0.2], [1, 1])
    with pytest.raises(ValueError):
        pr_auc([0.1, 0.2], [0, 0])


def test_roc_auc_examples():
    assert roc_auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0
    assert roc_auc([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0]) == 0.5
    assert roc_auc([0.9, 0.8, 0.7, 0.6], [1, 0, 1, 0]) == pytest.approx(0.75)


def test_rank_metrics_match_brute_force(rng):
    for trial in range(100):
        n = int(rng.integers(5, 60))
        labels = rng.integers(0, 2, size=n)
        if labels.min() == labels.max():
            labels[0] = 1 - labels[0]
        if trial % 2:
            scores = rng.normal(size=n)
        else:
            scores = rng.integers(0, 4, size=n).astype(float)  # force ties
        assert pr_auc(scores, labels) == pytest.approx(
            brute_pr_auc(scores, labels), abs=1e-12)
        assert roc_auc(scores, labels) == pytest.approx(
            brute_roc_auc(scores, labels), abs=1e-12)


def test_rank_metrics_invariant_under_monotone_transform(rng):
    for _ in range(20):
        scores = rng.normal(size=40)
        labels = rng.integers(0, 2, size=40)
        if labels.min() == labels.max():
            labels[0] = 1 - labels[0]
        warped = np.exp(3.0 * scores) + 1.0
        assert pr_auc(scores, labels) == pytest.approx(pr_auc(warped, labels))
        assert roc_auc(scores, labels) == pytest.approx(roc_auc(warped, labels))


def test_roc_auc_flip_identity(rng):
    for _ in range(20):
        scores = rng.integers(0, 5, size=30).astype(float)
        labels = rng.integers(0, 2, size=30)
        if labels.min() == labels.max():
            labels[0] = 1 - labels[0]
        total = roc_auc(scores, labels) + roc_auc(-scores, labels)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_random_ranking_pr_auc_averages_prevalence(rng):
    # expected average precision of a random ranking is the positive rate
    n, npos = 1000, 50
    labels = np.zeros(n, dtype=int)
    labels[:npos] = 1
    vals = []
    for _ in range(2000):
        vals.append(pr_auc(rng.random(n), labels))
    assert np.mean(vals) == pytest.approx(0.05, abs=0.01)


def test_latent_corr_exact_cases(rng):
    v = rng.normal(size=500)
    assert latent_corr(v, v) == pytest.approx(1.0)
    assert latent_corr(-v, v) == pytest.approx(-1.0)


def test_latent_corr_attenuation(rng):
    n = 100_000
    v = rng.normal(size=n)
    noisy = v + rng.normal(size=n)
    assert latent_corr(noisy, v) == pytest.approx(1 / np.sqrt(2), abs=0.01)


def test_latent_corr_rejects_degenerate():
    with pytest.raises(ValueError):
        latent_corr([1.0, 1.0, 1.0], [0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        latent_corr([1.0], [0.5])


def test_paired_delta_ci_hand_example():
    res = paired_delta_ci([1.0, 2.0, 3.0])
    assert res.mean == pytest.approx(2.0)
    assert res.sd == pytest.approx(1.0)
    assert res.se == pytest.approx(0.57735, abs=1e-4)
    assert res.ci_lo == pytest.approx(0.8683, abs=1e-4)
    assert res.ci_hi == pytest.approx(3.1317, abs=1e-4)


def test_paired_delta_ci_constant_vector():
    res = paired_delta_ci([0.5] * 7)
    assert res.sd == 0.0
    assert res.ci_lo == res.ci_hi == 0.5
    res = paired_delta_ci([0.4] * 7)  # mean rounds at the last bit
    assert res.ci_lo == pytest.approx(0.4, abs=1e-12)
    assert res.ci_hi == pytest.approx(0.4, abs=1e-12)


def test_paired_delta_ci_matches_reported_width():
    # n=12 with sd 0.011 gives a half width near 0.0064
    half = 1.96 * 0.011 / np.sqrt(12)
    assert half == pytest.approx(0.0064, abs=2e-4)
    assert half == pytest.approx((-0.0833 - -0.0960) / 2, abs=3e-4)


def test_paired_delta_ci_matches_oracle(rng):
    for _ in range(100):
        d = rng.normal(size=int(rng.integers(2, 30)))
        res = paired_delta_ci(d)
        mean, sd, se, lo, hi = brute_ci(list(d))
        assert res.mean == pytest.approx(mean, abs=1e-12)
        assert res.sd == pytest.approx(sd, abs=1e-12)
        assert res.se == pytest.approx(se, abs=1e-12)
        assert res.ci_lo == pytest.approx(lo, abs=1e-12)
        assert res.ci_hi == pytest.approx(hi, abs=1e-12)


def test_paired_delta_ci_needs_two():
    with pytest.raises(ValueError):
        paired_delta_ci([0.1])


def test_relative_delta():
    assert relative_delta(-0.0897, 0.1679) == pytest.approx(-53.4, abs=0.05)
    assert relative_delta(0.0, 0.3) == 0.0
    assert relative_delta(-0.010, 0.1679) == pytest.approx(-5.96, abs=0.01)
    with pytest.raises(ValueError):
        relative_delta(0.1, 0.0)

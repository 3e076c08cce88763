"""Second-order binary logistic objective."""
import numpy as np


def sigmoid(x):
    """Numerically saturating logistic function, scalar or array."""
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return float(out[0]) if scalar else out


def logit(p: float) -> float:
    return float(np.log(p / (1.0 - p)))


def logistic_grad_hess(margin, label):
    """Gradient and hessian of log-loss w.r.t. the margin.

    g = p - y, h = p (1 - p) with p = sigmoid(margin); h is in (0, 0.25]
    away from saturation.
    """
    p = sigmoid(margin)
    g = p - np.asarray(label, dtype=np.float64)
    h = p * (1.0 - p)
    if np.ndim(g) == 0:
        return float(g), float(h)
    return g, h


def log_loss(margins, labels) -> float:
    """Mean binary log-loss computed from raw margins (stable form)."""
    m = np.asarray(margins, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    return float(np.mean(np.logaddexp(0.0, m) - y * m))

"""Pure-numpy reference implementations of the hot kernels."""
from __future__ import annotations

import numpy as np


def pareto_transform_moments(p, scale, alpha):
    """Mean and unbiased variance of x_i = scale * p_i**(-1/alpha)."""
    x = scale * p ** (-1.0 / alpha)
    n = x.size
    mean = float(x.mean())
    d = x - mean
    var = float((d * d).sum() / (n - 1)) if n > 1 else 0.0
    return mean, var


def pareto_running_means(u, scale, alpha, checkpoints):
    """Running means of x_i = scale * u_i**(-1/alpha) after `checkpoints` draws."""
    x = scale * u ** (-1.0 / alpha)
    cs = np.cumsum(x)
    idx = np.asarray(checkpoints, dtype=np.int64)
    return cs[idx - 1] / idx


def standardized_moments(x):
    """Mean, population sd, skewness and excess kurtosis of a sample."""
    mean = float(x.mean())
    d = x - mean
    m2 = float((d * d).mean())
    if m2 == 0.0:
        return mean, 0.0, 0.0, 0.0
    m3 = float((d * d * d).mean())
    m4 = float((d * d * d * d).mean())
    sd = m2**0.5
    return mean, sd, m3 / m2**1.5, m4 / (m2 * m2) - 3.0

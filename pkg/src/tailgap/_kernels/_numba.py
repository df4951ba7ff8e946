"""Numba-compiled twins of the numpy kernels.

Single-threaded on purpose: results must not depend on worker count.
Numerics may differ from the numpy backend in the last few ulps (loop order
vs pairwise summation); both backends meet every documented tolerance.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def pareto_transform_moments(p, scale, alpha):
    inv = -1.0 / alpha
    n = p.shape[0]
    x = np.empty(n)
    total = 0.0
    for i in range(n):
        x[i] = scale * p[i] ** inv
        total += x[i]
    mean = total / n
    if n < 2:
        return mean, 0.0
    ss = 0.0
    for i in range(n):
        d = x[i] - mean
        ss += d * d
    return mean, ss / (n - 1)


@njit(cache=True, nogil=True)
def pareto_running_means(u, scale, alpha, checkpoints):
    inv = -1.0 / alpha
    out = np.empty(checkpoints.shape[0])
    acc = 0.0
    j = 0
    for i in range(u.shape[0]):
        acc += scale * u[i] ** inv
        while j < checkpoints.shape[0] and i + 1 == checkpoints[j]:
            out[j] = acc / checkpoints[j]
            j += 1
    return out


@njit(cache=True, nogil=True)
def standardized_moments(x):
    n = x.shape[0]
    total = 0.0
    for i in range(n):
        total += x[i]
    mean = total / n
    m2 = 0.0
    m3 = 0.0
    m4 = 0.0
    for i in range(n):
        d = x[i] - mean
        d2 = d * d
        m2 += d2
        m3 += d2 * d
        m4 += d2 * d2
    m2 /= n
    m3 /= n
    m4 /= n
    if m2 == 0.0:
        return mean, 0.0, 0.0, 0.0
    sd = m2**0.5
    return mean, sd, m3 / m2**1.5, m4 / (m2 * m2) - 3.0

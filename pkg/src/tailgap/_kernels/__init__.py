"""Hot numeric kernels with two interchangeable backends.

The numba backend (jit-compiled loops) is used when available; set
``TAILGAP_NUMBA=0`` to force the pure-numpy fallback, ``TAILGAP_NUMBA=1``
to require numba. Resolution is lazy so commands that never touch a kernel
never pay the numba import.
"""
from __future__ import annotations

import os

import numpy as np

from . import _numpy

__all__ = [
    "backend_name",
    "set_backend",
    "available_backends",
    "pareto_transform_moments",
    "pareto_running_means",
    "standardized_moments",
]

_FALSY = {"0", "false", "off", "no"}
_TRUTHY = {"1", "true", "on", "yes"}

_active: str | None = None


def _load_numba_backend():
    from . import _numba  # deferred: importing numba is slow

    return _numba


def available_backends() -> tuple[str, ...]:
    try:
        _load_numba_backend()
    except ImportError:
        return ("numpy",)
    return ("numpy", "numba")


def _resolve_default() -> str:
    flag = os.environ.get("TAILGAP_NUMBA", "").strip().lower()
    if flag in _FALSY:
        return "numpy"
    if flag in _TRUTHY:
        _load_numba_backend()  # raise now if unavailable
        return "numba"
    try:
        _load_numba_backend()
    except ImportError:
        return "numpy"
    return "numba"


def backend_name() -> str:
    global _active
    if _active is None:
        _active = _resolve_default()
    return _active


def set_backend(name: str) -> None:
    """Override the backend for this process ("numpy" or "numba")."""
    global _active
    if name == "numba":
        _load_numba_backend()
    elif name != "numpy":
        raise ValueError(f"unknown kernel backend: {name!r}")
    _active = name


def _impl():
    return _load_numba_backend() if backend_name() == "numba" else _numpy


def _f64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def pareto_transform_moments(p, scale: float, alpha: float) -> tuple[float, float]:
    """Mean and unbiased variance of scale * p**(-1/alpha) over the sample."""
    mean, var = _impl().pareto_transform_moments(_f64(p), float(scale), float(alpha))
    return float(mean), float(var)


def pareto_running_means(u, scale: float, alpha: float, checkpoints) -> np.ndarray:
    """Running means of scale * u**(-1/alpha) at the 1-based checkpoint counts."""
    cps = np.ascontiguousarray(checkpoints, dtype=np.int64)
    u = _f64(u)
    if cps.size and (cps[0] < 1 or np.any(np.diff(cps) <= 0) or cps[-1] > u.size):
        raise ValueError("checkpoints must be ascending, >= 1 and <= sample size")
    return np.asarray(_impl().pareto_running_means(u, float(scale), float(alpha), cps))


def standardized_moments(x) -> tuple[float, float, float, float]:
    """Mean, population sd, skewness, excess kurtosis of a sample."""
    mean, sd, skew, kurt = _impl().standardized_moments(_f64(x))
    return float(mean), float(sd), float(skew), float(kurt)

"""Pushforward of a Beta-distributed exceedance probability through the
Pareto inverse survival function k = scale * p**(-1/alpha).

Closed forms for the induced density, mean and variance come with strict
moment-existence predicates (the n-th moment requires alpha > n/a and
alpha > n/(a+b)) and a seeded Monte Carlo oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import betaln, gammaln

from . import _kernels
from .distributions import make_rng
from .errors import DomainError, UnboundedBandError
from .extended import INFINITE, ExtendedReal, finite

__all__ = [
    "BetaErrorModel",
    "PushforwardResult",
    "ErrorBand",
    "beta_moments",
    "moment_exists",
    "pushforward_density",
    "pushforward_mean",
    "pushforward_variance",
    "pushforward_sample",
    "error_band",
]

_MOMENT_FLAG_ORDERS = (1, 2, 3, 4)


@dataclass(frozen=True)
class BetaErrorModel:
    """Beta(a, b) model for the distribution of a probability estimate."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.b > 0):
            raise ValueError("Beta parameters a and b must be > 0")

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}


class ErrorBand(NamedTuple):
    k_low: float
    k_center: float
    k_high: float


@dataclass(frozen=True)
class PushforwardResult:
    """Closed-form moments of the induced threshold plus Monte Carlo estimates."""

    mean: ExtendedReal
    variance: ExtendedReal
    mc_mean: float
    mc_mean_ci_halfwidth: float
    mc_variance: float
    mc_n: int
    moment_flags: tuple[tuple[int, bool], ...]

    @property
    def ci_reliable(self) -> bool:
        # The normal-approximation CI on the MC mean is meaningless when the
        # pushforward variance is infinite; values are still reported.
        return self.variance.finite

    def to_json(self) -> dict:
        return {
            "mean": self.mean.to_json(),
            "variance": self.variance.to_json(),
            "mc_mean": self.mc_mean,
            "mc_mean_ci_halfwidth": self.mc_mean_ci_halfwidth,
            "mc_variance": self.mc_variance,
            "mc_n": self.mc_n,
            "ci_reliable": self.ci_reliable,
            "moment_flags": [{"n": n, "exists": e} for n, e in self.moment_flags],
        }


def _check_tail(scale: float, alpha: float) -> None:
    if not (scale > 0):
        raise ValueError("scale must be > 0")
    if not (alpha > 0):
        raise ValueError("alpha must be > 0")


def beta_moments(model: BetaErrorModel) -> tuple[float, float]:
    """Exact mean a/(a+b) and variance ab/((a+b)^2 (a+b+1))."""
    a, b = model.a, model.b
    s = a + b
    return a / s, a * b / (s * s * (s + 1.0))


def moment_exists(n: int, model: BetaErrorModel, alpha: float) -> bool:
    """Strict existence test for the n-th pushforward moment."""
    if int(n) != n or n < 1:
        raise ValueError("moment order n must be a positive integer")
    _check_tail(1.0, alpha)
    return alpha > n / model.a and alpha > n / (model.a + model.b)


def pushforward_density(model: BetaErrorModel, scale: float, alpha: float, k):
    """Density of k = scale * p**(-1/alpha) for p ~ Beta(a, b); zero below scale.

    At k == scale the density is defined by its limit: 0 for b > 1,
    a*alpha/scale for b == 1, and +inf for b < 1.
    """
    _check_tail(scale, alpha)
    a, b = model.a, model.b
    k_arr = np.asarray(k, dtype=float)
    scalar = k_arr.ndim == 0
    flat = np.atleast_1d(k_arr).astype(float)
    out = np.zeros_like(flat)

    above = flat > scale
    if np.any(above):
        kk = flat[above]
        u = alpha * np.log(scale / kk)  # < 0
        log_pdf = (
            math.log(alpha)
            + a * u
            + (b - 1.0) * np.log(-np.expm1(u))
            - np.log(kk)
            - betaln(a, b)
        )
        out[above] = np.exp(log_pdf)

    at_edge = flat == scale
    if np.any(at_edge):
        if b > 1.0:
            edge = 0.0
        elif b == 1.0:
            edge = a * alpha / scale
        else:
            edge = math.inf
        out[at_edge] = edge

    out = out.reshape(k_arr.shape)
    return float(out) if scalar else out


def _raw_moment(model: BetaErrorModel, scale: float, alpha: float, n: int) -> float:
    # E[K^n] = scale^n * B(a - n/alpha, b) / B(a, b), via log-gamma differences
    # so large a+b neither overflows nor loses precision near the boundary.
    a, b = model.a, model.b
    shift = n / alpha
    log_m = (
        n * math.log(scale)
        + gammaln(a - shift)
        + gammaln(a + b)
        - gammaln(a)
        - gammaln(a + b - shift)
    )
    return float(math.exp(log_m))


def pushforward_mean(model: BetaErrorModel, scale: float, alpha: float) -> ExtendedReal:
    """Closed-form mean of the induced threshold, or INFINITE."""
    _check_tail(scale, alpha)
    if not moment_exists(1, model, alpha):
        return INFINITE
    return finite(_raw_moment(model, scale, alpha, 1))


def pushforward_variance(model: BetaErrorModel, scale: float, alpha: float) -> ExtendedReal:
    """Closed-form variance of the induced threshold, or INFINITE."""
    _check_tail(scale, alpha)
    if not moment_exists(2, model, alpha):
        return INFINITE
    m1 = _raw_moment(model, scale, alpha, 1)
    m2 = _raw_moment(model, scale, alpha, 2)
    return finite(m2 - m1 * m1)


def pushforward_sample(
    model: BetaErrorModel, scale: float, alpha: float, seed: int, n: int
) -> PushforwardResult:
    """Monte Carlo oracle: sample p ~ Beta(a, b), push through the quantile map.

    Reports the sample mean with a 95% normal-approximation CI halfwidth and
    the unbiased sample variance next to the closed forms.
    """
    _check_tail(scale, alpha)
    if n < 1000:
        raise ValueError("Monte Carlo sample size must be >= 1000")
    rng = make_rng(seed)
    p = rng.beta(model.a, model.b, size=int(n))
    # A draw of exactly 0.0 stands for "below the 2^-53 resolution of the
    # uniform source"; floor there so the transform stays finite.
    np.maximum(p, 2.0**-53, out=p)
    mc_mean, mc_var = _kernels.pareto_transform_moments(p, scale, alpha)
    halfwidth = 1.96 * math.sqrt(mc_var / n)
    return PushforwardResult(
        mean=pushforward_mean(model, scale, alpha),
        variance=pushforward_variance(model, scale, alpha),
        mc_mean=mc_mean,
        mc_mean_ci_halfwidth=halfwidth,
        mc_variance=mc_var,
        mc_n=int(n),
        moment_flags=tuple(
            (m, moment_exists(m, model, alpha)) for m in _MOMENT_FLAG_ORDERS
        ),
    )


def error_band(
    scale: float, alpha: float, p_center: float, p_halfwidth: float
) -> ErrorBand:
    """Threshold band induced by p_center +/- p_halfwidth through the quantile map.

    The k_high edge uses the smaller probability, so the band is asymmetric and
    widens without bound as the lower probability edge approaches 0.
    """
    _check_tail(scale, alpha)
    if not (p_halfwidth > 0):
        raise ValueError("p_halfwidth must be > 0")
    if not (0 < p_center < 1):
        raise DomainError("p_center must lie in (0, 1)")
    if p_center + p_halfwidth > 1.0:
        raise DomainError("p_center + p_halfwidth must not exceed 1")
    if p_center - p_halfwidth <= 0.0:
        raise UnboundedBandError(
            "probability band touches 0: the upper threshold edge is unbounded"
        )
    inv = -1.0 / alpha
    return ErrorBand(
        k_low=scale * (p_center + p_halfwidth) ** inv,
        k_center=scale * p_center**inv,
        k_high=scale * (p_center - p_halfwidth) ** inv,
    )

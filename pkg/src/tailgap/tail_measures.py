"""Tail expectations and their decomposition into threshold and integral terms.

For a threshold k and impact x**p, the partial expectation is the integral of
x**p times the density over (k, inf). With identity impact it splits exactly
into k * survival(k) plus the integral of the survival function over (k, inf),
with the second term dominating under fat tails.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .distributions import DistributionSpec, Spliced, StrongPareto
from .errors import DomainError, InfiniteMomentError
from .extended import INFINITE, ExtendedReal, finite

__all__ = [
    "ImpactFunction",
    "IDENTITY",
    "INDICATOR",
    "TailDecomposition",
    "partial_expectation",
    "tail_decomposition",
    "moment_map",
]

# Tighter than the 1e-6 gates downstream so quadrature noise never shows up there.
_EPSREL = 1e-10
_EPSABS = 1e-14
_LIMIT = 200


@dataclass(frozen=True)
class ImpactFunction:
    """Power impact x**exponent; exponent 0 is the exceedance indicator."""

    exponent: float

    def __post_init__(self) -> None:
        if not (self.exponent >= 0 and np.isfinite(self.exponent)):
            raise ValueError("impact exponent must be finite and >= 0")

    def __call__(self, x):
        return np.power(x, self.exponent)


IDENTITY = ImpactFunction(1.0)
INDICATOR = ImpactFunction(0.0)


@dataclass(frozen=True)
class TailDecomposition:
    """Threshold term k*P_k, integral term over the survival function, and their sum."""

    threshold_term: float
    integral_term: float
    total: float
    quadrature_error: float

    def to_json(self) -> dict:
        return {
            "threshold_term": self.threshold_term,
            "integral_term": self.integral_term,
            "total": self.total,
            "quadrature_error": self.quadrature_error,
        }


def _tail_index(spec: DistributionSpec) -> float | None:
    if isinstance(spec, StrongPareto):
        return spec.tail_index
    if isinstance(spec, Spliced):
        return spec.tail.tail_index
    return None


def _power_moment_is_finite(spec: DistributionSpec, exponent: float) -> bool:
    # Divergence is detected analytically: quadrature cannot certify it.
    alpha = _tail_index(spec)
    return alpha is None or alpha > exponent


def _pareto_partial(tail: StrongPareto, k: float, exponent: float) -> float:
    alpha, scale = tail.tail_index, tail.scale
    return alpha * scale**alpha * k ** (exponent - alpha) / (alpha - exponent)


def _improper_integral(fn, lower: float) -> tuple[float, float]:
    """Integral of fn over (lower, inf); maps (lower, inf) -> (0, 1] via x = lower/t."""
    if lower > 0.0:

        def transformed(t: float) -> float:
            v = fn(lower / t)
            return 0.0 if v == 0.0 else v * lower / (t * t)

        return quad(transformed, 0.0, 1.0, epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT)
    head, head_err = quad(fn, 0.0, 1.0, epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT)
    tail, tail_err = _improper_integral(fn, 1.0)
    return head + tail, head_err + tail_err


def _tail_quadrature(fn, spec: DistributionSpec, k: float) -> tuple[float, float]:
    """Integral of fn over (k, inf), split at the splice point when one exists."""
    if isinstance(spec, Spliced) and k < spec.splice_point:
        body, body_err = quad(
            fn, k, spec.splice_point, epsabs=_EPSABS, epsrel=_EPSREL, limit=_LIMIT
        )
        tail, tail_err = _improper_integral(fn, spec.splice_point)
        return body + tail, body_err + tail_err
    return _improper_integral(fn, k)


def _check_threshold(spec: DistributionSpec, k: float) -> float:
    k = float(k)
    if not np.isfinite(k):
        raise DomainError("threshold must be finite")
    if k < spec.support_lower():
        raise DomainError(
            f"threshold {k} lies below the support infimum {spec.support_lower()}"
        )
    return k


def partial_expectation(
    spec: DistributionSpec,
    k: float,
    impact: ImpactFunction = IDENTITY,
    *,
    force_quadrature: bool = False,
) -> ExtendedReal:
    """Integral of impact(x) * density(x) over (k, inf), or INFINITE.

    Closed form for Pareto tails; adaptive quadrature otherwise.
    `force_quadrature` is a test hook that disables the closed-form routes.
    """
    k = _check_threshold(spec, k)
    p = impact.exponent
    if not _power_moment_is_finite(spec, p):
        return INFINITE
    if not force_quadrature:
        if isinstance(spec, StrongPareto):
            return finite(_pareto_partial(spec, k, p))
        if isinstance(spec, Spliced):
            w = spec.tail_weight
            if k >= spec.splice_point:
                return finite(w * _pareto_partial(spec.tail, k, p))
            body_val, _ = quad(
                lambda x: impact(x) * spec.body.density(x),
                k,
                spec.splice_point,
                epsabs=_EPSABS,
                epsrel=_EPSREL,
                limit=_LIMIT,
            )
            return finite(body_val + w * _pareto_partial(spec.tail, spec.splice_point, p))
    val, _ = _tail_quadrature(lambda x: impact(x) * spec.density(x), spec, k)
    return finite(val)


def tail_decomposition(spec: DistributionSpec, k: float) -> TailDecomposition:
    """Split the identity-impact tail expectation into its two terms.

    The integral term is quadrature over the survival function, kept
    independent of the partial_expectation route so the two can be compared.
    """
    k = _check_threshold(spec, k)
    if not _power_moment_is_finite(spec, 1.0):
        raise InfiniteMomentError(
            "tail decomposition requires a finite first moment (tail index > 1)"
        )
    threshold_term = k * spec.survival(k)
    integral_term, err = _tail_quadrature(spec.survival, spec, k)
    return TailDecomposition(threshold_term, integral_term, threshold_term + integral_term, err)


def moment_map(
    spec: DistributionSpec, k: float, exponents
) -> list[tuple[float, ExtendedReal]]:
    """Partial expectation per power exponent; infinite entries are upward-closed."""
    exps = [float(e) for e in exponents]
    if any(e < 0 for e in exps):
        raise ValueError("exponents must be >= 0")
    if exps != sorted(exps):
        raise ValueError("exponents must be sorted ascending")
    out: list[tuple[float, ExtendedReal]] = []
    diverged = False
    for e in exps:
        if diverged:
            out.append((e, INFINITE))
            continue
        val = partial_expectation(spec, k, ImpactFunction(e))
        diverged = not val.finite
        out.append((e, val))
    return out

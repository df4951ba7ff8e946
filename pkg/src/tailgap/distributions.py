"""Distribution family: exact densities, survival functions, inverse survival
functions, and deterministic inverse-transform samplers.

All values are immutable after construction and safe to share across threads.
Samplers take an explicit seed and carry no hidden state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.stats import norm

from .errors import DomainError

__all__ = [
    "StrongPareto",
    "Exponential",
    "Lognormal",
    "Spliced",
    "DistributionSpec",
    "spec_from_json",
    "make_rng",
    "derived_rng",
]

_MAX_SEED = 2**64


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit unsigned seed; same seed, same stream."""
    if not (0 <= int(seed) < _MAX_SEED):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.default_rng(int(seed))


def derived_rng(seed: int, index: int) -> np.random.Generator:
    """Independent child stream for (seed, index), e.g. one per replication.

    Results assembled by index are therefore identical no matter how many
    workers execute the replications.
    """
    if not (0 <= int(seed) < _MAX_SEED):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if index < 0:
        raise ValueError("index must be nonnegative")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.default_rng(ss)


def _prepare(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _finish(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


def _check_probabilities(p: np.ndarray) -> None:
    if np.any(p <= 0.0):
        raise DomainError(
            "exceedance probability must lie in (0, 1]; p = 0 maps to an unbounded threshold"
        )
    if np.any(p > 1.0):
        raise DomainError("exceedance probability must lie in (0, 1]")


@dataclass(frozen=True)
class StrongPareto:
    """Pareto tail on [scale, inf) with survival (scale/k)**tail_index."""

    scale: float
    tail_index: float
    kind = "pareto"

    def __post_init__(self) -> None:
        if not (self.scale > 0):
            raise ValueError("scale must be > 0")
        if not (self.tail_index > 0):
            raise ValueError("tail_index must be > 0")

    def support_lower(self) -> float:
        return self.scale

    def density(self, x):
        x, scalar = _prepare(x)
        safe = np.maximum(x, self.scale)
        pdf = self.tail_index * self.scale**self.tail_index * safe ** (-self.tail_index - 1.0)
        return _finish(np.where(x < self.scale, 0.0, pdf), scalar)

    def survival(self, k):
        k, scalar = _prepare(k)
        safe = np.maximum(k, self.scale)
        sf = (self.scale / safe) ** self.tail_index
        return _finish(np.where(k < self.scale, 1.0, sf), scalar)

    def cdf(self, k):
        k, scalar = _prepare(k)
        return _finish(1.0 - np.asarray(self.survival(k)), scalar)

    def inverse_survival(self, p):
        p, scalar = _prepare(p)
        _check_probabilities(p)
        return _finish(self.scale * p ** (-1.0 / self.tail_index), scalar)

    def sample(self, seed: int, n: int) -> np.ndarray:
        rng = make_rng(seed)
        _check_count(n)
        return self.inverse_survival(1.0 - rng.random(n))

    def to_json(self) -> dict:
        return {"kind": "pareto", "scale": self.scale, "tail_index": self.tail_index}


@dataclass(frozen=True)
class Exponential:
    """Exponential distribution on [0, inf) with the given rate."""

    rate: float
    kind = "exponential"

    def __post_init__(self) -> None:
        if not (self.rate > 0):
            raise ValueError("rate must be > 0")

    def support_lower(self) -> float:
        return 0.0

    def density(self, x):
        x, scalar = _prepare(x)
        pdf = self.rate * np.exp(-self.rate * np.maximum(x, 0.0))
        return _finish(np.where(x < 0.0, 0.0, pdf), scalar)

    def survival(self, k):
        k, scalar = _prepare(k)
        return _finish(np.where(k < 0.0, 1.0, np.exp(-self.rate * np.maximum(k, 0.0))), scalar)

    def cdf(self, k):
        k, scalar = _prepare(k)
        return _finish(-np.expm1(-self.rate * np.maximum(k, 0.0)), scalar)

    def inverse_survival(self, p):
        p, scalar = _prepare(p)
        _check_probabilities(p)
        return _finish(-np.log(p) / self.rate, scalar)

    def sample(self, seed: int, n: int) -> np.ndarray:
        rng = make_rng(seed)
        _check_count(n)
        return self.inverse_survival(1.0 - rng.random(n))

    def to_json(self) -> dict:
        return {"kind": "exponential", "rate": self.rate}


@dataclass(frozen=True)
class Lognormal:
    """Lognormal: exp of a Normal(log_mean, log_sd)."""

    log_mean: float
    log_sd: float
    kind = "lognormal"

    def __post_init__(self) -> None:
        if not math.isfinite(self.log_mean):
            raise ValueError("log_mean must be finite")
        if not (self.log_sd > 0):
            raise ValueError("log_sd must be > 0")

    def support_lower(self) -> float:
        return 0.0

    def density(self, x):
        x, scalar = _prepare(x)
        safe = np.where(x > 0.0, x, 1.0)
        z = (np.log(safe) - self.log_mean) / self.log_sd
        pdf = np.exp(-0.5 * z * z) / (safe * self.log_sd * math.sqrt(2.0 * math.pi))
        return _finish(np.where(x > 0.0, pdf, 0.0), scalar)

    def survival(self, k):
        k, scalar = _prepare(k)
        safe = np.where(k > 0.0, k, 1.0)
        sf = norm.sf((np.log(safe) - self.log_mean) / self.log_sd)
        return _finish(np.where(k > 0.0, sf, 1.0), scalar)

    def cdf(self, k):
        k, scalar = _prepare(k)
        return _finish(1.0 - np.asarray(self.survival(k)), scalar)

    def inverse_survival(self, p):
        p, scalar = _prepare(p)
        _check_probabilities(p)
        with np.errstate(over="ignore"):
            out = np.exp(self.log_mean + self.log_sd * norm.isf(p))
        return _finish(out, scalar)

    def sample(self, seed: int, n: int) -> np.ndarray:
        rng = make_rng(seed)
        _check_count(n)
        return np.exp(self.log_mean + self.log_sd * rng.standard_normal(n))

    def to_json(self) -> dict:
        return {"kind": "lognormal", "log_mean": self.log_mean, "log_sd": self.log_sd}


@dataclass(frozen=True)
class Spliced:
    """Body distribution below the splice point, Pareto tail above it.

    The tail carries mass equal to the body's survival at the splice point;
    the body density is used unrescaled below it, so total mass is exactly 1.
    No density continuity is imposed at the splice.
    """

    body: Union[Exponential, Lognormal]
    splice_point: float
    tail: StrongPareto
    kind = "spliced"

    def __post_init__(self) -> None:
        if not isinstance(self.body, (Exponential, Lognormal)):
            raise ValueError("body must be Exponential or Lognormal")
        if not (self.splice_point > 0):
            raise ValueError("splice_point must be > 0")
        if not isinstance(self.tail, StrongPareto):
            raise ValueError("tail must be StrongPareto")
        if self.tail.scale != self.splice_point:
            raise ValueError("tail.scale must equal splice_point")

    @classmethod
    def of(cls, body, splice_point: float, tail_index: float) -> "Spliced":
        return cls(body, splice_point, StrongPareto(splice_point, tail_index))

    @property
    def tail_weight(self) -> float:
        """Mass assigned to the Pareto tail: body survival at the splice point."""
        return float(self.body.survival(self.splice_point))

    def support_lower(self) -> float:
        return self.body.support_lower()

    def density(self, x):
        x, scalar = _prepare(x)
        out = np.where(
            x < self.splice_point,
            self.body.density(x),
            self.tail_weight * np.asarray(self.tail.density(x)),
        )
        return _finish(out, scalar)

    def survival(self, k):
        k, scalar = _prepare(k)
        out = np.where(
            k < self.splice_point,
            self.body.survival(k),
            self.tail_weight * np.asarray(self.tail.survival(k)),
        )
        return _finish(out, scalar)

    def cdf(self, k):
        k, scalar = _prepare(k)
        return _finish(1.0 - np.asarray(self.survival(k)), scalar)

    def inverse_survival(self, p):
        p, scalar = _prepare(p)
        _check_probabilities(p)
        flat = np.atleast_1d(p)
        w = self.tail_weight
        out = np.empty_like(flat)
        in_tail = flat <= w
        if np.any(in_tail):
            out[in_tail] = self.tail.inverse_survival(flat[in_tail] / w)
        if np.any(~in_tail):
            out[~in_tail] = self.body.inverse_survival(flat[~in_tail])
        return _finish(out.reshape(p.shape), scalar)

    def sample(self, seed: int, n: int) -> np.ndarray:
        rng = make_rng(seed)
        _check_count(n)
        return self.inverse_survival(1.0 - rng.random(n))

    def to_json(self) -> dict:
        return {
            "kind": "spliced",
            "body": self.body.to_json(),
            "splice_point": self.splice_point,
            "tail": self.tail.to_json(),
        }


DistributionSpec = Union[StrongPareto, Exponential, Lognormal, Spliced]

_FIELDS = {
    "pareto": ("scale", "tail_index"),
    "exponential": ("rate",),
    "lognormal": ("log_mean", "log_sd"),
    "spliced": ("body", "splice_point", "tail"),
}


def _check_count(n: int) -> None:
    if int(n) < 1:
        raise ValueError("sample count must be >= 1")


def spec_from_json(obj: dict) -> DistributionSpec:
    """Parse the tagged JSON form; unknown kinds or fields are rejected."""
    if not isinstance(obj, dict):
        raise ValueError(f"distribution spec must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind not in _FIELDS:
        raise ValueError(f"unknown distribution kind: {kind!r}")
    expected = set(_FIELDS[kind]) | {"kind"}
    extra = set(obj) - expected
    if extra:
        raise ValueError(f"unknown fields for {kind!r}: {sorted(extra)}")
    missing = expected - set(obj)
    if missing:
        raise ValueError(f"missing fields for {kind!r}: {sorted(missing)}")
    if kind == "pareto":
        return StrongPareto(float(obj["scale"]), float(obj["tail_index"]))
    if kind == "exponential":
        return Exponential(float(obj["rate"]))
    if kind == "lognormal":
        return Lognormal(float(obj["log_mean"]), float(obj["log_sd"]))
    body = spec_from_json(obj["body"])
    tail = spec_from_json(obj["tail"])
    if not isinstance(tail, StrongPareto):
        raise ValueError("spliced tail must be a pareto spec")
    return Spliced(body, float(obj["splice_point"]), tail)

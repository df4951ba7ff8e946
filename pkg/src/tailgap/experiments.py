"""Parameter sweeps reproducing the qualitative tail-gap effects, each with a
pass/fail verdict and the thresholds it was judged against emitted alongside
the data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import kstest

from . import _kernels
from .distributions import DistributionSpec, Lognormal, derived_rng, make_rng
from .errors import DegenerateGridError, DomainError
from .propagation import BetaErrorModel
from .runtime import parallel_map
from .serialize import format_float
from .tail_measures import IDENTITY, partial_expectation

__all__ = [
    "SweepRow",
    "SweepTable",
    "skewness_sweep",
    "pit_check",
    "sum_of_bets",
    "nonconvergence_demo",
    "amplification_curve",
]


@dataclass(frozen=True)
class SweepRow:
    parameter_value: float
    metrics: dict


@dataclass(frozen=True)
class SweepTable:
    """Rows ordered by parameter value, with one verdict for the whole sweep."""

    parameter_name: str
    rows: tuple[SweepRow, ...]
    passed: bool
    reason: str

    def metric(self, name: str) -> np.ndarray:
        return np.array([row.metrics[name] for row in self.rows])

    def parameter_values(self) -> np.ndarray:
        return np.array([row.parameter_value for row in self.rows])

    def to_json(self) -> dict:
        return {
            "parameter_name": self.parameter_name,
            "rows": [
                {"parameter_value": row.parameter_value, "metrics": dict(row.metrics)}
                for row in self.rows
            ],
            "verdict": {"passed": self.passed, "reason": self.reason},
        }

    def to_csv(self) -> str:
        names = list(self.rows[0].metrics) if self.rows else []
        lines = [",".join([self.parameter_name] + names)]
        for row in self.rows:
            cells = [format_float(row.parameter_value)]
            cells += [format_float(row.metrics[name]) for name in names]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def _strictly_decreasing(v: np.ndarray) -> bool:
    return bool(np.all(np.diff(v) < 0))


def _strictly_increasing(v: np.ndarray) -> bool:
    return bool(np.all(np.diff(v) > 0))


def skewness_sweep(threshold: float, sigma_grid) -> SweepTable:
    """Mean-1 lognormal family: raising sigma raises skewness, and above
    sigma* = sqrt(2 ln K) it pushes the tail expectation up while the
    exceedance probability falls.
    """
    threshold = float(threshold)
    if not threshold > 1:
        raise ValueError("threshold must be > 1")
    sigmas = [float(s) for s in sigma_grid]
    if any(s <= 0 for s in sigmas) or sigmas != sorted(sigmas) or len(set(sigmas)) != len(sigmas):
        raise ValueError("sigma_grid must be positive and strictly ascending")

    sigma_star = math.sqrt(2.0 * math.log(threshold))
    rows = []
    for sigma in sigmas:
        spec = Lognormal(log_mean=-0.5 * sigma * sigma, log_sd=sigma)
        p_k = spec.survival(threshold)
        g_k = partial_expectation(spec, threshold, IDENTITY).expect_finite()
        e_s2 = math.exp(sigma * sigma) if sigma * sigma < 700 else math.inf
        skewness = (e_s2 + 2.0) * math.sqrt(e_s2 - 1.0) if math.isfinite(e_s2) else math.inf
        if not math.isfinite(skewness):
            raise DomainError(f"sigma={sigma} overflows the lognormal skewness")
        rows.append(
            SweepRow(
                sigma,
                {
                    "survival": p_k,
                    "tail_expectation": g_k,
                    "skewness": skewness,
                    "qualifying": 1.0 if sigma > sigma_star else 0.0,
                },
            )
        )

    qualifying = [r for r in rows if r.metrics["qualifying"] == 1.0]
    if len(qualifying) < 2:
        raise DegenerateGridError(
            f"need at least 2 sigma values above sigma* = {sigma_star:.6g}, got {len(qualifying)}"
        )
    p_q = np.array([r.metrics["survival"] for r in qualifying])
    g_q = np.array([r.metrics["tail_expectation"] for r in qualifying])
    passed = _strictly_decreasing(p_q) and _strictly_increasing(g_q)
    reason = (
        f"on sigma > sigma* = {sigma_star:.6g} (threshold {threshold:g}): "
        f"survival strictly decreasing = {_strictly_decreasing(p_q)}, "
        f"tail expectation strictly increasing = {_strictly_increasing(g_q)}"
    )
    return SweepTable("sigma", tuple(rows), passed, reason)


def pit_check(
    spec: DistributionSpec,
    seed: int,
    n: int,
    *,
    control_beta: tuple[float, float] | None = None,
) -> SweepTable:
    """Survival-transformed samples must be Uniform(0,1); verdict by a KS test
    at the asymptotic 1% critical value 1.63/sqrt(n).

    `control_beta` replaces the transformed values with Beta(a, b) draws, as a
    negative control that must fail.
    """
    n = int(n)
    if n < 10_000:
        raise ValueError("pit_check needs n >= 10000")
    if control_beta is None:
        x = spec.sample(seed, n)
        u = spec.survival(x)
        source = "survival transform"
    else:
        a, b = control_beta
        u = make_rng(seed).beta(float(a), float(b), size=n)
        source = f"negative control Beta({a:g},{b:g})"
    ks = float(kstest(u, "uniform").statistic)
    critical = 1.63 / math.sqrt(n)
    passed = ks < critical
    reason = f"{source}: KS statistic {ks:.6g} vs critical value {critical:.6g} (alpha ~ 0.01)"
    row = SweepRow(float(n), {"ks_statistic": ks, "critical_value": critical})
    return SweepTable("n", (row,), passed, reason)


def sum_of_bets(
    model: BetaErrorModel,
    seed: int,
    replications: int,
    m_values=(1, 2, 5, 10, 30),
) -> SweepTable:
    """Sums of m Beta-distributed bets: skewness and excess kurtosis shrink
    toward Gaussian as m grows.

    Verdict: |excess kurtosis| smaller at the largest m than at the smallest,
    and both |skewness| and |excess kurtosis| within 0.15 at the largest m.
    """
    replications = int(replications)
    if replications < 10_000:
        raise ValueError("sum_of_bets needs replications >= 10000")
    ms = [int(m) for m in m_values]
    if len(ms) < 2 or ms != sorted(ms) or len(set(ms)) != len(ms) or ms[0] < 1:
        raise ValueError("m_values must be >= 1, distinct and ascending")
    if ms[-1] < 2:
        raise ValueError("largest m must be >= 2")

    rows = []
    for index, m in enumerate(ms):
        rng = derived_rng(seed, index)
        sums = rng.beta(model.a, model.b, size=(replications, m)).sum(axis=1)
        mean, sd, skew, exkurt = _kernels.standardized_moments(sums)
        rows.append(
            SweepRow(
                float(m),
                {"mean": mean, "sd": sd, "skewness": skew, "excess_kurtosis": exkurt},
            )
        )

    first, last = rows[0].metrics, rows[-1].metrics
    shrunk = abs(last["excess_kurtosis"]) < abs(first["excess_kurtosis"])
    near_gaussian = (
        abs(last["skewness"]) <= 0.15 and abs(last["excess_kurtosis"]) <= 0.15
    )
    passed = shrunk and near_gaussian
    reason = (
        f"|excess kurtosis| {abs(last['excess_kurtosis']):.4g} at m={ms[-1]} vs "
        f"{abs(first['excess_kurtosis']):.4g} at m={ms[0]}; "
        f"m={ms[-1]} moments within +/-0.15 = {near_gaussian}"
    )
    return SweepTable("m", tuple(rows), passed, reason)


def nonconvergence_demo(
    alpha: float,
    scale: float,
    checkpoints,
    seed: int,
    replications: int,
) -> SweepTable:
    """Median running mean of Pareto samples at growing sample sizes.

    With alpha < 1 the medians must keep rising (infinite-mean signature);
    with a finite mean they must stabilize, last two checkpoints within 5%.
    """
    alpha = float(alpha)
    scale = float(scale)
    if not (alpha > 0 and scale > 0):
        raise ValueError("alpha and scale must be > 0")
    cps = [int(c) for c in checkpoints]
    if len(cps) < 2 or cps != sorted(cps) or len(set(cps)) != len(cps) or cps[0] < 1:
        raise ValueError("checkpoints must be >= 1, distinct and ascending")
    replications = int(replications)
    if replications < 1:
        raise ValueError("replications must be >= 1")

    cp_arr = np.asarray(cps, dtype=np.int64)
    total = cps[-1]

    def one_replication(rep: int) -> np.ndarray:
        rng = derived_rng(seed, rep)
        u = 1.0 - rng.random(total)  # in (0, 1]
        return _kernels.pareto_running_means(u, scale, alpha, cp_arr)

    running = np.array(parallel_map(one_replication, range(replications)))
    medians = np.median(running, axis=0)

    rows = tuple(
        SweepRow(float(c), {"median_running_mean": float(m)})
        for c, m in zip(cps, medians)
    )
    if alpha < 1.0:
        passed = _strictly_increasing(medians)
        reason = (
            f"alpha={alpha:g} < 1: median running mean strictly increasing = {passed}"
        )
    else:
        gap = abs(medians[-1] - medians[-2]) / abs(medians[-2])
        passed = bool(gap <= 0.05)
        reason = (
            f"alpha={alpha:g} >= 1: last two medians differ by {gap:.3%} (limit 5%)"
        )
    if replications == 1:
        reason += "; low confidence: single replication"
    return SweepTable("n", rows, passed, reason)


def amplification_curve(scale: float, alpha_list, p_grid) -> SweepTable:
    """Thresholds k = scale * p**(-1/alpha) and the local error amplification
    |dk/dp| = (scale/alpha) * p**(-1/alpha - 1) over a probability grid.

    Verdict: amplification grows as p shrinks (every alpha) and as alpha
    shrinks (every p).
    """
    scale = float(scale)
    if not scale > 0:
        raise ValueError("scale must be > 0")
    alphas = [float(a) for a in alpha_list]
    if not alphas or any(a <= 0 for a in alphas) or len(set(alphas)) != len(alphas):
        raise ValueError("alpha_list must be nonempty, positive and distinct")
    ps = sorted(float(p) for p in p_grid)
    if not ps or ps[0] <= 0 or ps[-1] >= 1 or len(set(ps)) != len(ps):
        raise ValueError("p_grid must be nonempty and strictly inside (0, 1)")

    def k_name(a: float) -> str:
        return f"k_alpha={a:g}"

    def amp_name(a: float) -> str:
        return f"amp_alpha={a:g}"

    rows = []
    for p in ps:
        metrics = {}
        for a in alphas:
            metrics[k_name(a)] = scale * p ** (-1.0 / a)
            metrics[amp_name(a)] = (scale / a) * p ** (-1.0 / a - 1.0)
        rows.append(SweepRow(p, metrics))

    grows_as_p_drops = all(
        _strictly_decreasing(np.array([r.metrics[amp_name(a)] for r in rows]))
        for a in alphas
    )
    by_alpha_desc = sorted(alphas, reverse=True)
    grows_as_alpha_drops = all(
        _strictly_increasing(
            np.array([row.metrics[amp_name(a)] for a in by_alpha_desc])
        )
        for row in rows
    ) if len(alphas) > 1 else True
    passed = grows_as_p_drops and grows_as_alpha_drops
    reason = (
        f"amplification increasing as p decreases = {grows_as_p_drops}; "
        f"increasing as alpha decreases = {grows_as_alpha_drops}"
    )
    return SweepTable("p", tuple(rows), passed, reason)

"""Command-line front end: JSON config in, CSV/JSON files out.

    tailgap <command> --config <path> [--seed N] [--out PATH] [--format csv|json]

Commands: eval, decompose, propagate, band, experiment. Exit status 0 on
success, 1 on validation errors, 2 on domain errors, 3 when an experiment
verdict is "fail". Errors are printed as single-line JSON on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import experiments, propagation, tail_measures
from .distributions import spec_from_json
from .errors import ConfigError, DomainError
from .extended import ExtendedReal
from .propagation import BetaErrorModel
from .serialize import atomic_write_text, format_float, json_ready
from .tail_measures import ImpactFunction

COMMANDS = ("eval", "decompose", "propagate", "band", "experiment")
_COMMON_KEYS = {"command", "seed", "output_path", "output_format"}
_COMMAND_KEYS = {
    "eval": {"distribution", "thresholds", "probabilities", "impact"},
    "decompose": {"distribution", "thresholds"},
    "propagate": {"beta", "pareto_tail", "mc_samples"},
    "band": {"pareto_tail", "p_centers", "p_halfwidth"},
    "experiment": {
        "experiment",
        "distribution",
        "beta",
        "threshold",
        "sigma_grid",
        "n",
        "m_values",
        "replications",
        "alpha",
        "scale",
        "checkpoints",
        "alpha_list",
        "p_grid",
    },
}
_EXPERIMENT_KEYS = {
    "skewness": {"threshold", "sigma_grid"},
    "pit": {"distribution", "n"},
    "clt": {"beta", "m_values", "replications"},
    "nonconvergence": {"alpha", "scale", "checkpoints", "replications"},
    "amplification": {"scale", "alpha_list", "p_grid"},
}
_MAX_SEED = 2**64


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
    except ConfigError as exc:
        _print_error(exc)
        return 1
    try:
        text, verdict_failed = _run(args.command, config)
    except ConfigError as exc:
        _print_error(exc)
        return 1
    except DomainError as exc:
        _print_error(exc)
        return 2
    atomic_write_text(config["output_path"], text)
    return 3 if verdict_failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailgap",
        description="Tail probabilities vs tail expectations for heavy-tailed distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "density/survival/inverse-survival/partial-expectation over a grid",
        "decompose": "threshold and integral terms of the tail expectation over a K-grid",
        "propagate": "closed-form and Monte Carlo pushforward of a Beta probability error",
        "band": "threshold bands induced by probability error bands",
        "experiment": "named sweep: skewness | pit | clt | nonconvergence | amplification",
    }
    for command in COMMANDS:
        p = sub.add_parser(command, help=helps[command])
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=None, help="override the config output_path")
        p.add_argument(
            "--format", choices=("csv", "json"), default=None, help="override output_format"
        )
    return parser


def _print_error(exc: Exception) -> None:
    line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
    print(line, file=sys.stderr)


def _load_config(args) -> dict:
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    allowed = _COMMON_KEYS | _COMMAND_KEYS[args.command]
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    declared = raw.get("command")
    if declared is not None and declared != args.command:
        raise ConfigError(
            f"config declares command {declared!r} but {args.command!r} was invoked"
        )

    config = dict(raw)
    if args.seed is not None:
        config["seed"] = args.seed
    if args.out is not None:
        config["output_path"] = args.out
    if args.format is not None:
        config["output_format"] = args.format

    seed = config.get("seed", 42)
    if not isinstance(seed, int) or isinstance(seed, bool) or not (0 <= seed < _MAX_SEED):
        raise ConfigError("seed must be an unsigned 64-bit integer")
    config["seed"] = seed
    out = config.get("output_path")
    if not isinstance(out, str) or not out:
        raise ConfigError("output_path is required (config field or --out)")
    fmt = config.get("output_format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("output_format must be 'csv' or 'json'")
    config["output_format"] = fmt
    return config


def _run(command: str, config: dict) -> tuple[str, bool]:
    if command == "eval":
        return _run_eval(config), False
    if command == "decompose":
        return _run_decompose(config), False
    if command == "propagate":
        return _run_propagate(config), False
    if command == "band":
        return _run_band(config), False
    return _run_experiment(config)


# ---------------------------------------------------------------------------
# config readers


def _wrap(fn, what):
    try:
        return fn()
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"invalid {what}: {exc}")


def _distribution(config: dict):
    if "distribution" not in config:
        raise ConfigError("missing required field 'distribution'")
    return _wrap(lambda: spec_from_json(config["distribution"]), "distribution")


def _beta_model(config: dict) -> BetaErrorModel:
    obj = config.get("beta")
    if not isinstance(obj, dict) or set(obj) != {"a", "b"}:
        raise ConfigError("'beta' must be an object with fields a and b")
    return _wrap(lambda: BetaErrorModel(float(obj["a"]), float(obj["b"])), "beta")


def _pareto_tail(config: dict) -> tuple[float, float]:
    obj = config.get("pareto_tail")
    if not isinstance(obj, dict) or set(obj) != {"scale", "tail_index"}:
        raise ConfigError("'pareto_tail' must be an object with fields scale and tail_index")
    scale, alpha = float(obj["scale"]), float(obj["tail_index"])
    if scale <= 0 or alpha <= 0:
        raise ConfigError("pareto_tail scale and tail_index must be > 0")
    return scale, alpha


def _number_list(config: dict, key: str, *, required: bool = True) -> list[float] | None:
    if key not in config:
        if required:
            raise ConfigError(f"missing required field {key!r}")
        return None
    value = config[key]
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise ConfigError(f"{key!r} must be a nonempty list of numbers")
    return [float(v) for v in value]


def _count(config: dict, key: str, default: int) -> int:
    value = config.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigError(f"{key!r} must be a positive integer")
    return value


# ---------------------------------------------------------------------------
# commands


def _run_eval(config: dict) -> str:
    spec = _distribution(config)
    thresholds = _number_list(config, "thresholds", required=False)
    probabilities = _number_list(config, "probabilities", required=False)
    if (thresholds is None) == (probabilities is None):
        raise ConfigError("eval needs exactly one of 'thresholds' or 'probabilities'")

    if probabilities is not None:
        if "impact" in config:
            raise ConfigError("'impact' applies only to threshold grids")
        rows = [
            {"p": p, "quantile": spec.inverse_survival(p)} for p in probabilities
        ]
        return _render_rows(rows, config["output_format"])

    impact_exp = config.get("impact", 1.0)
    if not isinstance(impact_exp, (int, float)) or isinstance(impact_exp, bool):
        raise ConfigError("'impact' must be a number")
    impact = _wrap(lambda: ImpactFunction(float(impact_exp)), "impact")
    rows = []
    for k in thresholds:
        rows.append(
            {
                "x": k,
                "density": spec.density(k),
                "survival": spec.survival(k),
                "partial_expectation": tail_measures.partial_expectation(spec, k, impact),
            }
        )
    return _render_rows(rows, config["output_format"])


def _run_decompose(config: dict) -> str:
    spec = _distribution(config)
    thresholds = _number_list(config, "thresholds")
    rows = []
    for k in thresholds:
        d = tail_measures.tail_decomposition(spec, k)
        rows.append(
            {
                "K": k,
                "threshold_term": d.threshold_term,
                "integral_term": d.integral_term,
                "total": d.total,
                "quadrature_error": d.quadrature_error,
            }
        )
    return _render_rows(rows, config["output_format"])


def _run_propagate(config: dict) -> str:
    model = _beta_model(config)
    scale, alpha = _pareto_tail(config)
    n = _count(config, "mc_samples", 100_000)
    if n < 1000:
        raise ConfigError("'mc_samples' must be >= 1000")
    result = propagation.pushforward_sample(model, scale, alpha, config["seed"], n)
    if config["output_format"] == "json":
        return _dump_json(result.to_json())
    row = {
        "mean": result.mean,
        "variance": result.variance,
        "mc_mean": result.mc_mean,
        "mc_mean_ci_halfwidth": result.mc_mean_ci_halfwidth,
        "mc_variance": result.mc_variance,
        "mc_n": result.mc_n,
        "ci_reliable": result.ci_reliable,
    }
    for order, exists in result.moment_flags:
        row[f"moment{order}_exists"] = exists
    return _render_rows([row], "csv")


def _run_band(config: dict) -> str:
    scale, alpha = _pareto_tail(config)
    centers = _number_list(config, "p_centers")
    halfwidth = config.get("p_halfwidth")
    if not isinstance(halfwidth, (int, float)) or isinstance(halfwidth, bool) or halfwidth <= 0:
        raise ConfigError("'p_halfwidth' must be a positive number")
    rows = []
    for center in centers:
        band = propagation.error_band(scale, alpha, center, float(halfwidth))
        rows.append(
            {
                "p_center": center,
                "k_low": band.k_low,
                "k_center": band.k_center,
                "k_high": band.k_high,
            }
        )
    return _render_rows(rows, config["output_format"])


def _run_experiment(config: dict) -> tuple[str, bool]:
    key = config.get("experiment")
    if key not in _EXPERIMENT_KEYS:
        raise ConfigError(
            f"'experiment' must be one of {sorted(_EXPERIMENT_KEYS)}, got {key!r}"
        )
    allowed = _EXPERIMENT_KEYS[key] | _COMMON_KEYS | {"experiment"}
    unknown = set(config) - allowed
    if unknown:
        raise ConfigError(f"fields not used by experiment {key!r}: {sorted(unknown)}")
    seed = config["seed"]

    if key == "skewness":
        threshold = config.get("threshold", 3.0)
        grid = _number_list(config, "sigma_grid", required=False) or [1.6, 2.0, 2.5, 3.0]
        table = _wrap_domain(lambda: experiments.skewness_sweep(threshold, grid))
    elif key == "pit":
        spec = _distribution(config)
        n = _count(config, "n", 100_000)
        table = _wrap_domain(lambda: experiments.pit_check(spec, seed, n))
    elif key == "clt":
        model = _beta_model(config)
        replications = _count(config, "replications", 100_000)
        m_values = _number_list(config, "m_values", required=False) or [1, 2, 5, 10, 30]
        table = _wrap_domain(
            lambda: experiments.sum_of_bets(model, seed, replications, [int(m) for m in m_values])
        )
    elif key == "nonconvergence":
        if "alpha" not in config:
            raise ConfigError("missing required field 'alpha'")
        alpha = float(config["alpha"])
        scale = float(config.get("scale", 1.0))
        checkpoints = _number_list(config, "checkpoints", required=False) or [
            1_000,
            10_000,
            100_000,
            1_000_000,
        ]
        replications = _count(config, "replications", 50)
        table = _wrap_domain(
            lambda: experiments.nonconvergence_demo(
                alpha, scale, [int(c) for c in checkpoints], seed, replications
            )
        )
    else:
        scale = float(config.get("scale", 1.0))
        alpha_list = _number_list(config, "alpha_list")
        p_grid = _number_list(config, "p_grid")
        table = _wrap_domain(
            lambda: experiments.amplification_curve(scale, alpha_list, p_grid)
        )

    if config["output_format"] == "json":
        return _dump_json(table.to_json()), not table.passed
    return table.to_csv(), not table.passed


def _wrap_domain(fn):
    # Bad parameter values discovered inside the sweep are validation errors;
    # DomainError subclasses keep their exit-status-2 meaning.
    try:
        return fn()
    except DomainError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc))


# ---------------------------------------------------------------------------
# rendering


def _render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _dump_json({"rows": [_row_json(row) for row in rows]})
    header: list[str] = []
    for name, value in rows[0].items():
        if isinstance(value, ExtendedReal):
            header += [f"{name}_finite", f"{name}_value"]
        else:
            header.append(name)
    lines = [",".join(header)]
    for row in rows:
        cells: list[str] = []
        for value in row.values():
            cells.extend(_csv_cells(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _row_json(row: dict) -> dict:
    return {
        name: value.to_json() if isinstance(value, ExtendedReal) else value
        for name, value in row.items()
    }


def _csv_cells(value) -> list[str]:
    if isinstance(value, ExtendedReal):
        if value.finite:
            return ["true", format_float(value.value)]
        return ["false", "inf"]
    if isinstance(value, bool):
        return ["true" if value else "false"]
    if isinstance(value, int):
        return [str(value)]
    return [format_float(value)]


def _dump_json(payload: dict) -> str:
    return json.dumps(json_ready(payload), indent=2) + "\n"


if __name__ == "__main__":
    sys.exit(main())

"""Worker-pool plumbing.

TAILGAP_THREADS caps parallelism (0 or unset = auto). Work items always get
results assembled in input order, so the outcome never depends on the
worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import ConfigError


def worker_count() -> int:
    raw = os.environ.get("TAILGAP_THREADS", "").strip()
    cpus = os.cpu_count() or 1
    if raw in ("", "0"):
        return cpus
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"TAILGAP_THREADS must be a nonnegative integer, got {raw!r}")
    if value < 0:
        raise ConfigError(f"TAILGAP_THREADS must be a nonnegative integer, got {raw!r}")
    return min(value, cpus)


def parallel_map(fn, items) -> list:
    """Order-preserving map, threaded when the worker cap allows it."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))

"""Output formatting shared by table serialization and the CLI.

Every numeric is written with at most 12 significant digits, and plain IEEE
infinities or NaNs are refused: unbounded quantities must arrive as tagged
extended reals.
"""
from __future__ import annotations

import math
import os
import tempfile

import numpy as np


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(
            "refusing to write a bare non-finite float; use the tagged extended-real form"
        )
    return format(x, ".12g")


def round12(x: float) -> float:
    """Value rounded to 12 significant digits (what format_float would print)."""
    return float(format_float(x))


def json_ready(obj):
    """Recursively convert a payload for json.dumps, rounding every float."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round12(obj)
    if isinstance(obj, str) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file plus rename so readers never see a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

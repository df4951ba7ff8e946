"""Extended reals: a finite value or a bare positive infinity.

Results that can diverge (tail expectations, pushforward moments) carry an
explicit finite/infinite tag instead of IEEE ``inf``/``nan``, so the
moment-existence boundary stays testable and serializable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ExtendedReal:
    """Tagged value: ``finite(x)`` or the ``INFINITE`` constant."""

    finite: bool
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.finite:
            v = float(self.value)
            if not math.isfinite(v):
                raise ValueError("finite ExtendedReal requires a finite value")
            object.__setattr__(self, "value", v)
        else:
            # normalize so INFINITE instances compare equal
            object.__setattr__(self, "value", 0.0)

    def expect_finite(self) -> float:
        if not self.finite:
            raise ValueError("value is infinite")
        return self.value

    def to_json(self) -> dict:
        if self.finite:
            return {"finite": True, "value": self.value}
        return {"finite": False, "value": "inf"}

    @classmethod
    def from_json(cls, obj: dict) -> "ExtendedReal":
        if not isinstance(obj, dict) or set(obj) != {"finite", "value"}:
            raise ValueError(f"not an extended-real object: {obj!r}")
        if obj["finite"]:
            return cls(True, float(obj["value"]))
        if obj["value"] != "inf":
            raise ValueError(f"infinite extended real must carry 'inf', got {obj['value']!r}")
        return INFINITE

    def __repr__(self) -> str:
        return f"finite({self.value!r})" if self.finite else "INFINITE"


def finite(x: float) -> ExtendedReal:
    """Wrap a finite float."""
    return ExtendedReal(True, x)


INFINITE = ExtendedReal(False)

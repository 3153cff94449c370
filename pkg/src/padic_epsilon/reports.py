"""Comparison records shared by the verifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .local_field import PadicNumber

# Digits withheld from comparisons on top of the precision bookkeeping.
COMPARE_GUARD = 2


def default_required(ctx) -> int:
    """Agreement threshold used by the acceptance suite: N - 4 pi-digits."""
    return ctx.N - 4


def _ser(x: Any) -> Any:
    if isinstance(x, PadicNumber):
        return x.to_string()
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {k: _ser(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    return x


@dataclass
class Comparison:
    """Two independently computed values and how far they agree."""

    label: str
    lhs: PadicNumber
    rhs: PadicNumber
    agree_digits: float
    required_digits: int
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "agree_digits": _ser(self.agree_digits),
            "required_digits": self.required_digits,
            "pass": self.passed,
        }
        if self.extra:
            d["extra"] = _ser(self.extra)
        return d


def compare(label: str, lhs: PadicNumber, rhs: PadicNumber, required: int | None = None, **extra) -> Comparison:
    if required is None:
        required = default_required(lhs.ctx)
    agree = lhs.agree_digits(rhs)
    return Comparison(label, lhs, rhs, agree, required, agree >= required, dict(extra))


serialize = _ser

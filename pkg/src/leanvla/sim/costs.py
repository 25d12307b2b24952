"""Per-step inference-cost accounting.

Costs are in units of one full-policy forward pass.  Pruning reduces the
cost of a full-policy step as a function of the kept-token fraction; the
lightweight generator costs a flat, near-zero amount regardless of tokens.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..actions import ActionSource
from ..errors import DomainError

__all__ = ["CostModel", "cost_of_step"]

_MODES = ("linear", "quadratic")


@dataclass(frozen=True)
class CostModel:
    c_full: float = 1.0
    c_tok: float = 0.6
    c_lwm: float = 0.001
    mode: str = "linear"

    def __post_init__(self):
        if self.c_full <= 0:
            raise DomainError(f"c_full must be positive, got {self.c_full}")
        if not 0.0 < self.c_lwm < self.c_full:
            raise DomainError(f"need 0 < c_lwm < c_full, got c_lwm={self.c_lwm}")
        if not 0.0 <= self.c_tok <= 1.0:
            raise DomainError(f"c_tok must lie in [0, 1], got {self.c_tok}")
        if self.mode not in _MODES:
            raise DomainError(f"cost mode must be one of {_MODES}, got {self.mode!r}")


def cost_of_step(source: ActionSource, kept: int, total: int, model: CostModel) -> float:
    """Cost of one control step.

    ``linear`` assumes compute scales with token count; ``quadratic``
    assumes the token-dependent share scales with the square of the kept
    fraction (attention-dominated regime).  With all tokens kept both modes
    return exactly ``c_full``.
    """
    if total < 1:
        raise DomainError(f"token total must be >= 1, got {total}")
    if not 0 <= kept <= total:
        raise DomainError(f"kept tokens {kept} out of range 0..{total}")
    if source is ActionSource.LWM:
        return model.c_lwm
    frac = kept / total
    if model.mode == "linear":
        return model.c_full * (1.0 - model.c_tok * (1.0 - frac))
    return model.c_full * ((1.0 - model.c_tok) + model.c_tok * frac * frac)

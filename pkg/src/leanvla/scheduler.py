"""Route selection between the full policy and the lightweight generator.

A step may be handed to the lightweight generator only when the previous
action moved every translational channel inside the open speed window
(v_min, v_max) *and* the recent history is still dominated by full-policy
actions (ratio strictly above tau).  Until the history window has filled,
the full policy is always used.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .actions import Action, ActionBuffer, SchedulerConfig

__all__ = [
    "ActionType",
    "TriggerReason",
    "RouteDecision",
    "classify_action_type",
    "lwm_trigger",
]


class ActionType(Enum):
    """Coarse motion class of an action.

    Intuitive: every translational channel is moving faster than v_min —
    steady transport motion that a cheap extrapolator can continue.
    Deliberative: anything else (fine positioning, grasp/release moments).
    """

    INTUITIVE = "intuitive"
    DELIBERATIVE = "deliberative"


class TriggerReason(Enum):
    BUFFER_TOO_SHORT = "buffer_too_short"
    SPEED_OUT_OF_WINDOW = "speed_out_of_window"
    RATIO_TOO_LOW = "ratio_too_low"
    ELIGIBLE = "eligible"


@dataclass(frozen=True)
class RouteDecision:
    reason: TriggerReason

    @property
    def use_lwm(self) -> bool:
        return self.reason is TriggerReason.ELIGIBLE


def classify_action_type(action: Action, cfg: SchedulerConfig) -> ActionType:
    """Intuitive iff all translational magnitudes strictly exceed v_min."""
    if all(abs(v) > cfg.v_min for v in action.trans):
        return ActionType.INTUITIVE
    return ActionType.DELIBERATIVE


def lwm_trigger(prev: Action, buf: ActionBuffer, cfg: SchedulerConfig) -> RouteDecision:
    """Decide the route for the step that follows ``prev``.

    The speed window is checked before the history ratio, so the reported
    reason names the first gate that failed.  All comparisons are strict:
    a component sitting exactly on v_min or v_max, or a ratio exactly equal
    to tau, keeps the full policy in charge.
    """
    if len(buf) < cfg.buffer_len:
        return RouteDecision(TriggerReason.BUFFER_TOO_SHORT)
    in_window = all(cfg.v_min < abs(v) < cfg.v_max for v in prev.trans)
    if not in_window:
        return RouteDecision(TriggerReason.SPEED_OUT_OF_WINDOW)
    if not buf.vla_ratio() > cfg.tau:
        return RouteDecision(TriggerReason.RATIO_TOO_LOW)
    return RouteDecision(TriggerReason.ELIGIBLE)

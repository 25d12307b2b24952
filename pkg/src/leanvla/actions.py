"""Core action types: a 7-channel robot action and the rolling history buffer.

An action holds three translational velocity channels, three rotational
velocity channels, and a binary gripper channel.  The buffer remembers the
most recent actions together with the route (full policy or lightweight
generator) that produced each one; the scheduler reads both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError

__all__ = [
    "ActionSource",
    "Action",
    "ActionBuffer",
    "SchedulerConfig",
]


class ActionSource(Enum):
    """Which route produced an action."""

    VLA = "vla"
    LWM = "lwm"


@dataclass(frozen=True)
class Action:
    """One 7-channel action: translational velocity, rotational velocity, gripper.

    All channels are plain floats so actions behave as immutable values.
    The gripper channel is binary (0.0 open, 1.0 closed).
    """

    trans: tuple[float, float, float]
    rot: tuple[float, float, float]
    gripper: float

    def __post_init__(self):
        if len(self.trans) != 3 or len(self.rot) != 3:
            raise DomainError("action needs exactly 3 translational and 3 rotational channels")
        for v in (*self.trans, *self.rot):
            if not math.isfinite(v):
                raise DomainError(f"non-finite action channel: {v!r}")
        if self.gripper not in (0.0, 1.0):
            raise DomainError(f"gripper channel must be 0.0 or 1.0, got {self.gripper!r}")

    @property
    def continuous(self) -> tuple[float, ...]:
        """The six continuous channels (translation then rotation), gripper excluded."""
        return (*self.trans, *self.rot)

    def translational_speed(self) -> float:
        """Largest translational component magnitude (the speed scalar used throughout)."""
        return max(abs(v) for v in self.trans)


@dataclass(frozen=True)
class ActionBuffer:
    """Fixed-capacity rolling window of recent actions, oldest first.

    Immutable: ``push`` returns a new buffer, evicting the oldest entry once
    the window is full.
    """

    capacity: int
    entries: tuple[tuple[Action, ActionSource], ...] = field(default=())

    def __post_init__(self):
        if self.capacity < 2:
            raise DomainError(f"buffer capacity must be >= 2, got {self.capacity}")
        if len(self.entries) > self.capacity:
            raise DomainError("buffer holds more entries than its capacity")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def full(self) -> bool:
        return len(self.entries) == self.capacity

    def push(self, action: Action, source: ActionSource) -> "ActionBuffer":
        """Append an action, dropping the oldest entry if the window is full."""
        entries = self.entries + ((action, source),)
        if len(entries) > self.capacity:
            entries = entries[1:]
        return ActionBuffer(self.capacity, entries)

    def actions(self) -> tuple[Action, ...]:
        return tuple(a for a, _ in self.entries)

    def last(self) -> Action:
        if not self.entries:
            raise DomainError("buffer is empty")
        return self.entries[-1][0]

    def vla_ratio(self) -> float:
        """Fraction of buffered actions produced by the full policy."""
        if not self.entries:
            raise DomainError("vla_ratio is undefined for an empty buffer")
        n_vla = sum(1 for _, src in self.entries if src is ActionSource.VLA)
        return n_vla / len(self.entries)


@dataclass(frozen=True)
class SchedulerConfig:
    """Thresholds for the model-scheduling trigger.

    ``v_min``/``v_max`` bound the per-component speed window, ``tau`` is the
    minimum full-policy fraction the history must keep, and ``buffer_len`` is
    the window length.  ``tau = 1.0`` disables the lightweight route entirely
    (the ratio can never strictly exceed 1).
    """

    v_min: float = 0.2
    v_max: float = 0.5
    tau: float = 0.5
    buffer_len: int = 6

    def __post_init__(self):
        if not 0.0 < self.v_min < self.v_max:
            raise DomainError(f"need 0 < v_min < v_max, got ({self.v_min}, {self.v_max})")
        if not 0.0 < self.tau <= 1.0:
            raise DomainError(f"tau must lie in (0, 1], got {self.tau}")
        if self.buffer_len < 2:
            raise DomainError(f"buffer_len must be >= 2, got {self.buffer_len}")

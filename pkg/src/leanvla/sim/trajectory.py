"""Reference pick-and-place trajectories with a four-phase speed profile.

An episode moves the end effector from ``start`` to ``goal`` through
Targeting (slow approach), Grasping (near-still, gripper closes), Moving
(accelerate, cruise, decelerate) and Placing (slow, gripper opens).  All
translational velocities point along the straight line to the goal; only
the scalar speed varies.

The Moving ramps are built in two slopes.  A steep bridge leaves the slow
regime quickly, then a shallow, exactly linear segment carries the speed
through the scheduler's per-component window (v_min, v_max).  The shallow
segment is laid out so that

* every step whose predecessor sits inside the window has at least six
  collinear steps behind it — a line fit over the history extrapolates the
  next action essentially exactly, which keeps hand-offs to the lightweight
  generator drift-free; and
* exactly two consecutive steps per crossing are eligible for the
  lightweight route: grid points enter the window with a margin, and the
  third point already sits outside it.

Cruise speed is solved from the displacement the other phases leave over,
and must land inside the configured Moving band.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..actions import Action
from ..errors import DomainError

__all__ = [
    "GripperEvent",
    "Phase",
    "PhaseProfile",
    "ReferenceTrajectory",
    "default_profile",
    "build_scalar_profile",
    "gen_reference_trajectory",
    "sample_task",
]

PHASE_NAMES = ("targeting", "grasping", "moving", "placing")

# Shallow-segment layout, in units of the crossing step delta.  The two
# in-window grid points sit at floor + 0.3*W and floor + 0.725*W where W is
# the window width along the fastest component; spacing 0.425*W puts the
# neighbouring points 0.125*W below the floor and 0.15*W above the top.
_CROSS_IN_LOW = 0.3
_CROSS_STEP = 0.425
_PRE_WINDOW_STEPS = 6  # collinear steps below the first in-window point
_BRIDGE_STEPS = 3
_RISE_STEPS = 2
_DESC_LEAD_STEPS = 6  # collinear steps above the first in-window point, descending
_DESC_TAIL_STEPS = 2  # shallow steps below the window before the down bridge
# Fixed Moving step count outside the cruise plateau (ascent + descent).
_STRUCTURED_OVERHEAD = (
    _BRIDGE_STEPS
    + (_PRE_WINDOW_STEPS + 3)  # shallow ascent: lead-in, two in-window, one above
    + _RISE_STEPS
    + _RISE_STEPS  # symmetric fall from cruise
    + (_DESC_LEAD_STEPS + 3 + _DESC_TAIL_STEPS)  # shallow descent incl. window
    + _BRIDGE_STEPS
)


class GripperEvent(Enum):
    CLOSE = "close"
    OPEN = "open"


@dataclass(frozen=True)
class Phase:
    name: str
    duration: int
    peak_speed: float
    gripper_event: GripperEvent | None = None

    def __post_init__(self):
        if self.name not in PHASE_NAMES:
            raise DomainError(f"unknown phase name {self.name!r}")
        if self.duration < 1:
            raise DomainError(f"phase {self.name} needs duration >= 1, got {self.duration}")
        if self.peak_speed <= 0:
            raise DomainError(f"phase {self.name} needs a positive peak speed")


@dataclass(frozen=True)
class PhaseProfile:
    """Ordered phase list plus the speed geometry the plan must respect."""

    phases: tuple[Phase, Phase, Phase, Phase]
    window: tuple[float, float] = (0.2, 0.5)  # scheduler speed window to sweep
    band: tuple[float, float] = (0.5, 0.8)  # allowed Moving cruise speeds

    def __post_init__(self):
        names = tuple(p.name for p in self.phases)
        if names != PHASE_NAMES:
            raise DomainError(f"phases must be {PHASE_NAMES} in order, got {names}")
        if sum(p.duration for p in self.phases) < 4:
            raise DomainError("phase durations must sum to at least 4")
        lo, hi = self.window
        if not 0 < lo < hi:
            raise DomainError(f"bad speed window ({lo}, {hi})")
        blo, bhi = self.band
        if not lo < blo < bhi:
            raise DomainError(f"bad Moving band ({blo}, {bhi})")
        for p in self.phases:
            if p.name != "moving" and p.peak_speed >= lo:
                raise DomainError(
                    f"phase {p.name} peak {p.peak_speed} must stay below the window floor {lo}"
                )

    def phase(self, name: str) -> Phase:
        for p in self.phases:
            if p.name == name:
                return p
        raise DomainError(f"no phase named {name!r}")


@dataclass(frozen=True)
class ReferenceTrajectory:
    """Planned actions, the gripper events they contain, and plan metadata."""

    actions: tuple[Action, ...]
    events: tuple[tuple[int, GripperEvent], ...]
    speeds: tuple[float, ...]  # per-step scalar speed (fastest-component magnitude)
    direction: tuple[float, float, float]  # unit-infinity-norm direction, or zeros

    def __len__(self) -> int:
        return len(self.actions)


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([stream, seed])


def default_profile(rng: np.random.Generator) -> PhaseProfile:
    """Default four-phase profile with mildly randomized durations."""
    n_plateau = int(rng.integers(3, 8))
    return PhaseProfile(
        phases=(
            Phase("targeting", int(rng.integers(5, 8)), 0.14),
            Phase("grasping", int(rng.integers(3, 5)), 0.07, GripperEvent.CLOSE),
            Phase("moving", _STRUCTURED_OVERHEAD + n_plateau, 0.7),
            Phase("placing", int(rng.integers(3, 6)), 0.07, GripperEvent.OPEN),
        )
    )


def _slow_phase_speeds(phase: Phase, rng: np.random.Generator, cap: float) -> list[float]:
    """Gentle ramp for targeting, near-constant crawl for grasping/placing.

    Jittered speeds are clipped to ``cap`` so no slow-phase step can drift
    into the scheduler's speed window.
    """
    n = phase.duration
    if phase.name == "targeting":
        base = np.linspace(0.4 * phase.peak_speed, phase.peak_speed, n)
    else:
        base = np.full(n, 0.8 * phase.peak_speed)
    jitter = 1.0 + 0.08 * rng.uniform(-1.0, 1.0, size=n)
    return [float(v) for v in np.minimum(base * jitter, cap)]


def _structured_moving(
    d_moving: int, cruise: float, floor: float, top: float, entry: float, exit_speed: float
) -> list[float]:
    """Moving-phase speeds with shallow two-step window crossings on both ramps."""
    width = top - floor
    delta = _CROSS_STEP * width
    p_in1 = floor + _CROSS_IN_LOW * width  # first in-window grid point
    n_plateau = d_moving - _STRUCTURED_OVERHEAD

    # Ascent: steep bridge, then the shallow line through the window.
    asc_shallow = [p_in1 + (k - _PRE_WINDOW_STEPS) * delta for k in range(_PRE_WINDOW_STEPS + 3)]
    bridge_up = list(np.linspace(entry, asc_shallow[0], _BRIDGE_STEPS + 2)[1:-1])
    rise = list(np.linspace(asc_shallow[-1], cruise, _RISE_STEPS + 2)[1:-1])

    plateau = [cruise] * n_plateau

    # Descent: shallow line entered well above the window so the history is
    # collinear by the time the window is reached, then a steep drop.
    desc = [p_in1 + (k - 1 - _DESC_TAIL_STEPS) * delta
            for k in range(_DESC_LEAD_STEPS + 3 + _DESC_TAIL_STEPS)]
    desc.reverse()
    fall = list(np.linspace(cruise, desc[0], _RISE_STEPS + 2)[1:-1])
    bridge_down = list(np.linspace(desc[-1], exit_speed, _BRIDGE_STEPS + 2)[1:-1])

    return bridge_up + asc_shallow + rise + plateau + fall + desc + bridge_down


def build_scalar_profile(
    profile: PhaseProfile,
    min_ratio: float,
    cruise: float,
    seed: int,
) -> tuple[list[float], list[tuple[int, GripperEvent]]]:
    """Per-step scalar speeds (fastest component) and gripper-event indices.

    ``min_ratio`` is the smallest direction-component magnitude relative to
    the largest; it widens or narrows the per-component speed window the
    Moving ramps must sweep.  The displacement this profile covers is
    ``sum(speeds)`` along the fastest axis — affine in ``cruise``, which is
    what lets the trajectory generator solve for the cruise speed.
    """
    rng = _rng(seed, 17)
    lo, hi = profile.window
    speeds: list[float] = []
    events: list[tuple[int, GripperEvent]] = []

    targeting = profile.phase("targeting")
    grasping = profile.phase("grasping")
    moving = profile.phase("moving")
    placing = profile.phase("placing")

    slow_cap = 0.9 * lo
    t_speeds = _slow_phase_speeds(targeting, rng, slow_cap)
    g_speeds = _slow_phase_speeds(grasping, rng, slow_cap)
    p_speeds = _slow_phase_speeds(placing, rng, slow_cap)

    floor = lo / min_ratio if min_ratio > 0 else float("inf")
    width = hi - floor
    structured = (
        moving.duration >= _STRUCTURED_OVERHEAD + 2
        and np.isfinite(floor)
        and width >= 0.01
        and floor - 2.25 * width > 0.05  # shallow lead-in must stay above zero speed
    )
    if structured:
        m_speeds = _structured_moving(
            moving.duration, cruise, floor, hi, entry=g_speeds[-1], exit_speed=p_speeds[0]
        )
    else:
        n_up = max(2, moving.duration // 3)
        n_down = n_up
        n_plateau = moving.duration - n_up - n_down
        while n_plateau < 1:
            n_up -= 1
            n_down = n_up
            n_plateau = moving.duration - n_up - n_down
        up = list(np.linspace(g_speeds[-1], cruise, n_up + 1)[1:])
        down = list(np.linspace(cruise, p_speeds[0], n_down + 1)[1:])
        m_speeds = up + [cruise] * n_plateau + down

    speeds.extend(t_speeds)
    speeds.extend(g_speeds)
    events.append((len(speeds) - 1, GripperEvent.CLOSE))
    speeds.extend(m_speeds)
    speeds.extend(p_speeds)
    events.append((len(speeds) - 1, GripperEvent.OPEN))
    return speeds, events


def gen_reference_trajectory(
    profile: PhaseProfile,
    start: tuple[float, float, float],
    goal: tuple[float, float, float],
    seed: int,
) -> ReferenceTrajectory:
    """Deterministic action plan carrying the end effector from start to goal.

    The cruise speed is solved so the planned displacement matches
    ``goal - start`` exactly; if no cruise speed inside the profile's Moving
    band can cover that displacement with the given durations, the
    start/goal/durations combination is rejected as inconsistent.
    """
    delta = np.asarray(goal, dtype=float) - np.asarray(start, dtype=float)
    if delta.shape != (3,):
        raise DomainError("start and goal must be 3-vectors")
    length = float(np.max(np.abs(delta)))

    targeting = profile.phase("targeting")
    rot_rng = _rng(seed, 29)
    rot_vec = tuple(float(v) for v in rot_rng.uniform(-0.03, 0.03, size=3))

    if length == 0.0:
        template, events = build_scalar_profile(profile, 1.0, profile.band[0], seed)
        direction = (0.0, 0.0, 0.0)
        speeds = [0.0] * len(template)
    else:
        direction_arr = delta / length
        min_ratio = float(np.min(np.abs(direction_arr)))

        def total(cruise: float) -> float:
            s, _ = build_scalar_profile(profile, min_ratio, cruise, seed)
            return float(sum(s))

        # sum(speeds) is affine in the cruise speed; solve it from two probes.
        s0 = total(0.0)
        s1 = total(1.0)
        if s1 - s0 <= 0:
            raise DomainError("profile leaves no cruise steps to absorb displacement")
        cruise = (length - s0) / (s1 - s0)
        blo, bhi = profile.band
        if not blo <= cruise <= bhi:
            raise DomainError(
                f"start/goal displacement needs cruise speed {cruise:.4g}, outside the "
                f"Moving band [{blo}, {bhi}]; adjust durations or goal distance"
            )
        speeds, events = build_scalar_profile(profile, min_ratio, cruise, seed)
        direction = (float(direction_arr[0]), float(direction_arr[1]), float(direction_arr[2]))

    # Assemble actions: translation follows the direction, small rotation
    # adjustments only during targeting, gripper driven by the events.
    close_idx = events[0][0]
    open_idx = events[1][0]
    actions = []
    for i, sp in enumerate(speeds):
        trans = (direction[0] * sp, direction[1] * sp, direction[2] * sp)
        rot = rot_vec if i < targeting.duration else (0.0, 0.0, 0.0)
        if i < close_idx:
            grip = 0.0
        elif i < open_idx:
            grip = 1.0
        else:
            grip = 0.0
        actions.append(Action(trans=trans, rot=rot, gripper=grip))
    return ReferenceTrajectory(
        actions=tuple(actions),
        events=tuple(events),
        speeds=tuple(float(s) for s in speeds),
        direction=direction,
    )


def sample_task(seed: int) -> tuple[PhaseProfile, tuple[float, float, float], tuple[float, float, float]]:
    """Seeded (profile, start, goal) triple consistent by construction.

    Goals are placed so that the slowest direction component is a bit above
    0.4 of the fastest one: the per-component speed window is then narrow
    enough that each Moving ramp offers exactly two lightweight-eligible
    steps.  The axes and signs of the displacement are shuffled per seed.
    """
    rng = _rng(seed, 3)
    profile = default_profile(rng)
    min_ratio = float(rng.uniform(0.435, 0.444))
    mid_ratio = float(rng.uniform(0.60, 0.90))
    cruise = float(rng.uniform(0.66, 0.76))
    signs = rng.choice([-1.0, 1.0], size=3)
    perm = rng.permutation(3)

    speeds, _ = build_scalar_profile(profile, min_ratio, cruise, seed)
    length = float(sum(speeds))
    ratios = np.empty(3)
    ratios[perm[0]] = 1.0
    ratios[perm[1]] = mid_ratio
    ratios[perm[2]] = min_ratio
    start = (0.0, 0.0, 0.0)
    goal = tuple(float(length * ratios[i] * signs[i]) for i in range(3))
    return profile, start, goal

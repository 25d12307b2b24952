"""Minimal kinematic environment: velocities integrate with a unit timestep."""

from __future__ import annotations

from dataclasses import dataclass

from ..actions import Action
from ..errors import DomainError

__all__ = ["EnvState", "env_step"]


@dataclass(frozen=True)
class EnvState:
    """End-effector pose plus gripper state and the step counter."""

    ee_pos: tuple[float, float, float]
    ee_rot: tuple[float, float, float]
    gripper: float
    step: int = 0

    def __post_init__(self):
        if self.gripper not in (0.0, 1.0):
            raise DomainError(f"gripper state must be 0.0 or 1.0, got {self.gripper!r}")
        if self.step < 0:
            raise DomainError(f"step counter must be >= 0, got {self.step}")

    @staticmethod
    def initial(pos: tuple[float, float, float] = (0.0, 0.0, 0.0)) -> "EnvState":
        return EnvState(ee_pos=pos, ee_rot=(0.0, 0.0, 0.0), gripper=0.0, step=0)


def env_step(state: EnvState, action: Action) -> EnvState:
    """Euler-integrate one action: position and rotation advance by the velocity."""
    px, py, pz = state.ee_pos
    rx, ry, rz = state.ee_rot
    tx, ty, tz = action.trans
    wx, wy, wz = action.rot
    return EnvState(
        ee_pos=(px + tx, py + ty, pz + tz),
        ee_rot=(rx + wx, ry + wy, rz + wz),
        gripper=action.gripper,
        step=state.step + 1,
    )

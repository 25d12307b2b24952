"""Synthetic kinematic pick-and-place harness for end-to-end evaluation."""

from .costs import CostModel, cost_of_step
from .env import EnvState, env_step
from .episode import EpisodeTrace, SimConfig, StepRecord, oracle_policy_step, run_episode
from .scene import SceneSpec, render_scene, synth_attention_inputs
from .metrics import MetricsReport, compute_metrics
from .trajectory import (
    GripperEvent,
    Phase,
    PhaseProfile,
    default_profile,
    gen_reference_trajectory,
    sample_task,
)

__all__ = [
    "CostModel",
    "cost_of_step",
    "EnvState",
    "env_step",
    "EpisodeTrace",
    "SimConfig",
    "StepRecord",
    "oracle_policy_step",
    "run_episode",
    "SceneSpec",
    "render_scene",
    "synth_attention_inputs",
    "MetricsReport",
    "compute_metrics",
    "GripperEvent",
    "Phase",
    "PhaseProfile",
    "default_profile",
    "gen_reference_trajectory",
    "sample_task",
]

"""Closed-loop episode execution: schedule, act, integrate, account.

Each step first consults the scheduler.  Eligible steps run the lightweight
generator (falling back to the full policy if the validity gate rejects);
all other steps run the stand-in full policy, which tracks the reference
plan with bounded uniform noise.  Full-policy steps pay a token-dependent
cost driven by the pruning pipeline at the current speed; lightweight steps
pay a flat near-zero cost.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..actions import Action, ActionBuffer, ActionSource, SchedulerConfig
from ..attention import accumulate_importance, attention_weights
from ..canny import canny_edges
from ..errors import DomainError, PredictionRejected
from ..ridge import generate_action
from ..scheduler import TriggerReason, RouteDecision, lwm_trigger
from ..tokens import PruningConfig, TokenGrid, extract_spatial_tokens, prune_tokens, retain_ratio
from .costs import CostModel, cost_of_step
from .env import EnvState, env_step
from .scene import SceneSpec, render_scene, synth_attention_inputs
from .trajectory import GripperEvent, gen_reference_trajectory, sample_task

__all__ = ["SimConfig", "StepRecord", "EpisodeTrace", "oracle_policy_step", "run_episode"]


@dataclass(frozen=True)
class SimConfig:
    """Harness-level knobs: episode count, seeding, noise, termination, scene."""

    episodes: int = 10
    seed: int = 0
    noise: float = 0.0
    step_cap: int = 200
    success_tol: float = 0.05
    image_size: int = 112
    v_cap: float = 1.0
    attn_seed: int = 0
    out_dir: str = "runs"

    def __post_init__(self):
        if self.episodes < 1:
            raise DomainError(f"episode count must be >= 1, got {self.episodes}")
        if self.noise < 0:
            raise DomainError(f"noise half-width must be >= 0, got {self.noise}")
        if self.step_cap < 1:
            raise DomainError(f"step cap must be >= 1, got {self.step_cap}")
        if self.success_tol <= 0:
            raise DomainError(f"success tolerance must be positive, got {self.success_tol}")
        if self.image_size < 16:
            raise DomainError(f"image size must be >= 16, got {self.image_size}")
        if self.v_cap <= 0:
            raise DomainError(f"speed cap must be positive, got {self.v_cap}")

    def episode_seeds(self) -> list[int]:
        return [self.seed + i for i in range(self.episodes)]


@dataclass(frozen=True)
class StepRecord:
    """One executed control step, as persisted in trace CSVs."""

    step: int
    source: ActionSource
    action: Action
    speed: float  # pre-action speed signal (previous executed action)
    tokens_total: int
    tokens_kept: int
    retain_ratio: float
    cost: float
    cum_cost: float


@dataclass(frozen=True)
class EpisodeTrace:
    seed: int
    success: bool
    records: tuple[StepRecord, ...]

    @property
    def steps_used(self) -> int:
        return len(self.records)


def oracle_policy_step(
    ref_action: Action, noise: float, v_cap: float, rng: np.random.Generator
) -> Action:
    """Stand-in full policy: the reference action plus bounded uniform noise.

    Noise applies to the six continuous channels only and the result is
    clamped to the environment speed cap.  With ``noise == 0`` the reference
    action is returned exactly.  The generator is always advanced by one
    draw so traces stay aligned across noise settings.
    """
    if noise < 0:
        raise DomainError(f"noise half-width must be >= 0, got {noise}")
    u = rng.uniform(-1.0, 1.0, size=6)
    vals = np.clip(np.asarray(ref_action.continuous) + noise * u, -v_cap, v_cap)
    return Action(
        trans=(float(vals[0]), float(vals[1]), float(vals[2])),
        rot=(float(vals[3]), float(vals[4]), float(vals[5])),
        gripper=ref_action.gripper,
    )


def _prune_for_frame(
    spec: SceneSpec,
    state: EnvState,
    grid: TokenGrid,
    speed: float,
    prune_cfg: PruningConfig,
    attn_seed: int,
) -> int:
    """Kept-token count for the current frame at the current speed."""
    img = render_scene(spec, state.ee_pos)
    mask = canny_edges(img, prune_cfg.canny)
    spatial = extract_spatial_tokens(mask, grid)
    scores = accumulate_importance(attention_weights(synth_attention_inputs(img, grid, attn_seed)))
    return len(prune_tokens(scores, spatial, speed, grid, prune_cfg))


def run_episode(
    seed: int,
    sched_cfg: SchedulerConfig,
    prune_cfg: PruningConfig,
    cost_model: CostModel,
    sim_cfg: SimConfig,
) -> EpisodeTrace:
    """Run one seeded episode and return its full trace.

    Success requires the executed gripper transitions to replay the planned
    events in order and the final end-effector position to sit within the
    success tolerance (infinity norm) of the goal.
    """
    profile, start, goal = sample_task(seed)
    ref = gen_reference_trajectory(profile, start, goal, seed)
    spec = SceneSpec.for_task(start, goal, sim_cfg.image_size)
    grid = TokenGrid.for_image(sim_cfg.image_size, sim_cfg.image_size, prune_cfg.patch_size)
    noise_rng = np.random.default_rng([71, seed])

    state = EnvState.initial(start)
    buf = ActionBuffer(sched_cfg.buffer_len)
    prev: Action | None = None
    records: list[StepRecord] = []
    events_seen: list[GripperEvent] = []
    expected_events = [kind for _, kind in ref.events]
    cum = 0.0
    success = False

    for k, ref_action in enumerate(ref.actions):
        if k >= sim_cfg.step_cap:
            break
        if prev is None:
            decision = RouteDecision(TriggerReason.BUFFER_TOO_SHORT)
        else:
            decision = lwm_trigger(prev, buf, sched_cfg)
        speed = prev.translational_speed() if prev is not None else 0.0

        act: Action | None = None
        source = ActionSource.VLA
        if decision.use_lwm:
            try:
                act = generate_action(buf, prune_cfg.ridge_lambda, prev, v_cap=sim_cfg.v_cap)
                source = ActionSource.LWM
            except PredictionRejected:
                act = None
        if act is None:
            act = oracle_policy_step(ref_action, sim_cfg.noise, sim_cfg.v_cap, noise_rng)
            source = ActionSource.VLA

        total = grid.total
        if source is ActionSource.LWM:
            # No frame is processed on the lightweight route.
            kept = total
            ratio = 1.0
        else:
            ratio = retain_ratio(speed, prune_cfg)
            if ratio >= 1.0:
                kept = total  # full budget keeps every token; skip the frame work
            else:
                kept = _prune_for_frame(spec, state, grid, speed, prune_cfg, sim_cfg.attn_seed)
        cost = cost_of_step(source, kept, total, cost_model)
        cum += cost

        if act.gripper != state.gripper:
            events_seen.append(GripperEvent.CLOSE if act.gripper == 1.0 else GripperEvent.OPEN)
        state = env_step(state, act)
        buf = buf.push(act, source)
        prev = act
        records.append(
            StepRecord(
                step=k,
                source=source,
                action=act,
                speed=speed,
                tokens_total=total,
                tokens_kept=kept,
                retain_ratio=ratio,
                cost=cost,
                cum_cost=cum,
            )
        )
        err = max(abs(p - g) for p, g in zip(state.ee_pos, goal))
        if events_seen == expected_events and err <= sim_cfg.success_tol:
            success = True
            break

    if not success:
        err = max(abs(p - g) for p, g in zip(state.ee_pos, goal))
        success = events_seen == expected_events and err <= sim_cfg.success_tol
    return EpisodeTrace(seed=seed, success=success, records=tuple(records))

"""Aggregate metrics over a batch of episode traces."""

from __future__ import annotations

from dataclasses import dataclass

from ..actions import ActionSource
from ..errors import DomainError
from .costs import CostModel
from .episode import EpisodeTrace

__all__ = ["MetricsReport", "compute_metrics"]


@dataclass(frozen=True)
class MetricsReport:
    episodes: int
    total_steps: int
    lwm_steps: int
    intuitive_action_rate: float
    pruning_rate: float
    speedup: float
    success_rate: float
    total_cost: float
    mean_cost_per_step: float


def compute_metrics(traces: list[EpisodeTrace], cost_model: CostModel = CostModel()) -> MetricsReport:
    """Reduce traces to headline numbers.

    ``intuitive_action_rate`` is the fraction of all executed steps served by
    the lightweight generator.  ``pruning_rate`` is the fraction of visual
    tokens dropped across full-policy steps only (lightweight steps process
    no frame).  ``speedup`` compares the realised cost against paying the
    full per-step price everywhere: ``total_steps * c_full / total_cost``.
    Costs are summed in trace order, then record order, so the totals are
    reproducible bit for bit from the persisted rows.
    """
    if not traces:
        raise DomainError("need at least one trace to compute metrics")
    total_steps = 0
    lwm_steps = 0
    vla_total = 0
    vla_kept = 0
    total_cost = 0.0
    successes = 0
    for trace in traces:
        successes += 1 if trace.success else 0
        for rec in trace.records:
            total_steps += 1
            if rec.source is ActionSource.LWM:
                lwm_steps += 1
            else:
                vla_total += rec.tokens_total
                vla_kept += rec.tokens_kept
            total_cost += rec.cost
    if total_steps == 0:
        raise DomainError("traces contain no steps")
    pruning = 0.0 if vla_total == 0 else 1.0 - vla_kept / vla_total
    return MetricsReport(
        episodes=len(traces),
        total_steps=total_steps,
        lwm_steps=lwm_steps,
        intuitive_action_rate=lwm_steps / total_steps,
        pruning_rate=pruning,
        speedup=total_steps * cost_model.c_full / total_cost,
        success_rate=successes / len(traces),
        total_cost=total_cost,
        mean_cost_per_step=total_cost / total_steps,
    )

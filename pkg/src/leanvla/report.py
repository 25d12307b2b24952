"""Human-readable and CSV summaries of a metrics report."""

from __future__ import annotations

from .sim.metrics import MetricsReport

__all__ = ["render_report", "summary_csv"]

_ROWS = (
    ("episodes", "episodes", "d"),
    ("total steps", "total_steps", "d"),
    ("lightweight steps", "lwm_steps", "d"),
    ("intuitive action rate", "intuitive_action_rate", "f"),
    ("pruning rate", "pruning_rate", "f"),
    ("speedup", "speedup", "f"),
    ("success rate", "success_rate", "f"),
    ("total cost", "total_cost", "f"),
    ("mean cost per step", "mean_cost_per_step", "f"),
)


def render_report(report: MetricsReport) -> str:
    """Fixed-width two-column table, floats to three decimals."""
    lines = ["metric                  value", "-" * 29]
    for label, attr, kind in _ROWS:
        value = getattr(report, attr)
        text = f"{value:d}" if kind == "d" else f"{value:.3f}"
        lines.append(f"{label:<22}  {text}")
    return "\n".join(lines) + "\n"


def summary_csv(report: MetricsReport) -> str:
    """``metric,value`` rows; float metrics formatted to three decimals."""
    lines = ["metric,value"]
    for _, attr, kind in _ROWS:
        value = getattr(report, attr)
        text = f"{value:d}" if kind == "d" else f"{value:.3f}"
        lines.append(f"{attr},{text}")
    return "\n".join(lines) + "\n"

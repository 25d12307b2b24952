"""Episode trace persistence as CSV.

Layout: leading ``#`` comment lines carry episode metadata (seed, success),
then a fixed header row, then one row per executed step.  Floats are written
with ``repr`` so a written trace reads back bit for bit.  Lightweight-route
rows record a full token budget and retain ratio 1.0 because no frame is
processed on that route; the ``speed`` column is the pre-action speed signal
that drove scheduling and pruning on that step.
"""

from __future__ import annotations

import csv
import io

from .actions import Action, ActionSource
from .errors import DomainError
from .sim.episode import EpisodeTrace, StepRecord

__all__ = ["TRACE_COLUMNS", "format_trace", "parse_trace", "write_trace", "read_trace"]

TRACE_COLUMNS = (
    "step",
    "source",
    "ax",
    "ay",
    "az",
    "rx",
    "ry",
    "rz",
    "gripper",
    "speed",
    "tokens_total",
    "tokens_kept",
    "retain_ratio",
    "cost",
    "cum_cost",
)


def _row(rec: StepRecord) -> list[str]:
    act = rec.action
    return [
        str(rec.step),
        rec.source.value,
        repr(act.trans[0]),
        repr(act.trans[1]),
        repr(act.trans[2]),
        repr(act.rot[0]),
        repr(act.rot[1]),
        repr(act.rot[2]),
        repr(act.gripper),
        repr(rec.speed),
        str(rec.tokens_total),
        str(rec.tokens_kept),
        repr(rec.retain_ratio),
        repr(rec.cost),
        repr(rec.cum_cost),
    ]


def format_trace(trace: EpisodeTrace) -> str:
    buf = io.StringIO()
    buf.write(f"# seed={trace.seed}\n")
    buf.write(f"# success={1 if trace.success else 0}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for rec in trace.records:
        writer.writerow(_row(rec))
    return buf.getvalue()


def parse_trace(text: str) -> EpisodeTrace:
    """Inverse of :func:`format_trace`; strict about header and metadata."""
    meta: dict[str, str] = {}
    body: list[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            stripped = line.lstrip("#").strip()
            if "=" in stripped:
                key, _, value = stripped.partition("=")
                meta[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    if "seed" not in meta or "success" not in meta:
        raise DomainError("trace is missing seed/success metadata comments")
    if not body:
        raise DomainError("trace has no header row")
    rows = list(csv.reader(body))
    if tuple(rows[0]) != TRACE_COLUMNS:
        raise DomainError(f"unexpected trace header: {rows[0]!r}")
    records: list[StepRecord] = []
    for row in rows[1:]:
        if len(row) != len(TRACE_COLUMNS):
            raise DomainError(f"trace row has {len(row)} fields, expected {len(TRACE_COLUMNS)}")
        try:
            source = ActionSource(row[1])
        except ValueError as exc:
            raise DomainError(f"unknown action source {row[1]!r}") from exc
        try:
            act = Action(
                trans=(float(row[2]), float(row[3]), float(row[4])),
                rot=(float(row[5]), float(row[6]), float(row[7])),
                gripper=float(row[8]),
            )
            records.append(
                StepRecord(
                    step=int(row[0]),
                    source=source,
                    action=act,
                    speed=float(row[9]),
                    tokens_total=int(row[10]),
                    tokens_kept=int(row[11]),
                    retain_ratio=float(row[12]),
                    cost=float(row[13]),
                    cum_cost=float(row[14]),
                )
            )
        except ValueError as exc:
            raise DomainError(f"malformed trace row {row!r}: {exc}") from exc
    return EpisodeTrace(
        seed=int(meta["seed"]),
        success=meta["success"] in ("1", "true", "True"),
        records=tuple(records),
    )


def write_trace(trace: EpisodeTrace, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_trace(trace))


def read_trace(path: str) -> EpisodeTrace:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_trace(fh.read())

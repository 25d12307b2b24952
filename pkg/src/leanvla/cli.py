"""Command-line front end.

Three subcommands:

* ``simulate``   — run seeded episodes from an INI config, write per-episode
  trace CSVs plus a summary CSV, and print the metrics table.
* ``prune-image`` — run edge extraction and token pruning over a single PGM
  frame and report the kept token indices.
* ``fit-demo``   — fit the lightweight generator on a CSV action buffer and
  print its prediction for the next step.

Exit codes: 0 on success, 1 on validation errors, 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .actions import Action, ActionBuffer, ActionSource
from .attention import accumulate_importance
from .canny import CannyParams, GrayImage, canny_edges
from .config import RunConfig, load_config
from .errors import DomainError, PredictionRejected
from .pgm import read_pgm, write_pgm
from .report import render_report, summary_csv
from .ridge import generate_action
from .sim.episode import run_episode
from .sim.metrics import compute_metrics
from .sim.scene import synth_attention_inputs
from .attention import attention_weights
from .tokens import PruningConfig, TokenGrid, extract_spatial_tokens, prune_tokens, retain_ratio

__all__ = ["main"]


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    sim = cfg.sim
    overrides = {}
    if args.episodes is not None:
        overrides["episodes"] = args.episodes
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out_dir"] = args.out
    if overrides:
        from dataclasses import replace

        sim = replace(sim, **overrides)
        cfg = RunConfig(scheduler=cfg.scheduler, pruning=cfg.pruning, cost=cfg.cost, sim=sim)

    from .trace_io import write_trace

    os.makedirs(sim.out_dir, exist_ok=True)
    traces = []
    for seed in sim.episode_seeds():
        trace = run_episode(seed, cfg.scheduler, cfg.pruning, cfg.cost, sim)
        write_trace(trace, os.path.join(sim.out_dir, f"trace_{seed:05d}.csv"))
        traces.append(trace)
    report = compute_metrics(traces, cfg.cost)
    with open(os.path.join(sim.out_dir, "summary.csv"), "w", encoding="utf-8") as fh:
        fh.write(summary_csv(report))
    sys.stdout.write(render_report(report))
    return 0


def _load_attention_csv(path: str, n_tokens: int) -> np.ndarray:
    w = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    if w.shape != (n_tokens, n_tokens):
        raise DomainError(
            f"attention matrix shape {w.shape} does not match token count {n_tokens}"
        )
    return w


def _cmd_prune_image(args: argparse.Namespace) -> int:
    img = read_pgm(args.image)
    params = CannyParams(sigma=args.sigma, low_ratio=args.low, high_ratio=args.high)
    cfg = PruningConfig(patch_size=args.patch_size, canny=params)
    grid = TokenGrid.for_image(img.width, img.height, cfg.patch_size)

    mask = canny_edges(img, params)
    spatial = extract_spatial_tokens(mask, grid)
    if args.attn is not None:
        scores = accumulate_importance(_load_attention_csv(args.attn, grid.total))
    else:
        scores = accumulate_importance(attention_weights(synth_attention_inputs(img, grid, 0)))
    kept = prune_tokens(scores, spatial, args.speed, grid, cfg)

    if args.mask_out is not None:
        out = GrayImage.from_array(np.where(mask, 255, 0).astype(np.uint8))
        write_pgm(args.mask_out, out)
    print(f"tokens_total={grid.total}")
    print(f"spatial={len(spatial)}")
    print(f"retain_ratio={retain_ratio(args.speed, cfg):.6f}")
    print(f"kept={len(kept)}")
    print("indices=" + ",".join(str(i) for i in kept))
    return 0


def _cmd_fit_demo(args: argparse.Namespace) -> int:
    rows = np.loadtxt(args.buffer, delimiter=",", dtype=np.float64, skiprows=1, ndmin=2)
    if rows.shape[1] != 7:
        raise DomainError(
            f"buffer CSV needs 7 columns (ax,ay,az,rx,ry,rz,gripper), got {rows.shape[1]}"
        )
    if rows.shape[0] < 2:
        raise DomainError("buffer CSV needs at least 2 action rows")
    buf = ActionBuffer(capacity=rows.shape[0])
    for row in rows:
        act = Action(
            trans=(float(row[0]), float(row[1]), float(row[2])),
            rot=(float(row[3]), float(row[4]), float(row[5])),
            gripper=float(row[6]),
        )
        buf = buf.push(act, ActionSource.VLA)
    pred = generate_action(buf, args.lam, buf.last())
    print("trans=" + ",".join(repr(v) for v in pred.trans))
    print("rot=" + ",".join(repr(v) for v in pred.rot))
    print(f"gripper={pred.gripper!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leanvla",
        description="Action-aware model scheduling and visual token pruning toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run seeded pick-and-place episodes")
    p_sim.add_argument("--config", required=True, help="INI run configuration")
    p_sim.add_argument("--episodes", type=int, default=None, help="override episode count")
    p_sim.add_argument("--seed", type=int, default=None, help="override base seed")
    p_sim.add_argument("--out", default=None, help="override output directory")
    p_sim.set_defaults(func=_cmd_simulate)

    p_prune = sub.add_parser("prune-image", help="prune tokens for one PGM frame")
    p_prune.add_argument("--image", required=True, help="input P5 PGM image")
    p_prune.add_argument("--attn", default=None, help="CSV attention-weight matrix (optional)")
    p_prune.add_argument("--speed", type=float, required=True, help="current speed signal")
    p_prune.add_argument("--mask-out", default=None, help="write edge mask as PGM here")
    p_prune.add_argument("--patch-size", type=int, default=16)
    p_prune.add_argument("--sigma", type=float, default=1.4)
    p_prune.add_argument("--low", type=float, default=0.1)
    p_prune.add_argument("--high", type=float, default=0.3)
    p_prune.set_defaults(func=_cmd_prune_image)

    p_fit = sub.add_parser("fit-demo", help="fit the lightweight generator on a CSV buffer")
    p_fit.add_argument("--buffer", required=True, help="CSV with header ax,ay,az,rx,ry,rz,gripper")
    p_fit.add_argument("--lambda", dest="lam", type=float, default=1e-2)
    p_fit.set_defaults(func=_cmd_fit_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PredictionRejected as exc:
        print(f"error: prediction rejected: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

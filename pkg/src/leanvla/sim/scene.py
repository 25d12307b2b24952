"""Procedural camera frames and attention inputs for the synthetic harness.

Each full-policy step gets a grayscale top-down frame: a flat background, a
bright disc at the goal, a mid-bright disc at the end effector, and a fixed
shelf line for stable structure.  Token embeddings are synthesized from
per-patch statistics pushed through fixed seeded random projections, so the
attention path is exercised deterministically without a real backbone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..attention import AttentionInputs
from ..canny import GrayImage
from ..errors import DomainError
from ..tokens import TokenGrid

__all__ = ["SceneSpec", "render_scene", "synth_attention_inputs"]


@dataclass(frozen=True)
class SceneSpec:
    """Projection from world x/y coordinates onto a square image."""

    size: int
    world_min: tuple[float, float]
    world_max: tuple[float, float]
    goal_xy: tuple[float, float]

    def __post_init__(self):
        if self.size < 16:
            raise DomainError(f"scene size must be >= 16 pixels, got {self.size}")
        if not (self.world_min[0] < self.world_max[0] and self.world_min[1] < self.world_max[1]):
            raise DomainError("scene world box must have positive extent")

    @staticmethod
    def for_task(
        start: tuple[float, float, float], goal: tuple[float, float, float], size: int
    ) -> "SceneSpec":
        xs = (start[0], goal[0])
        ys = (start[1], goal[1])
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        margin = 0.25 * span
        return SceneSpec(
            size=size,
            world_min=(min(xs) - margin, min(ys) - margin),
            world_max=(min(xs) + span + margin, min(ys) + span + margin),
            goal_xy=(goal[0], goal[1]),
        )

    def to_pixel(self, x: float, y: float) -> tuple[float, float]:
        sx = (x - self.world_min[0]) / (self.world_max[0] - self.world_min[0])
        sy = (y - self.world_min[1]) / (self.world_max[1] - self.world_min[1])
        return sx * (self.size - 1), sy * (self.size - 1)


def _disc(canvas: np.ndarray, cx: float, cy: float, radius: float, value: float) -> None:
    h, w = canvas.shape
    yy, xx = np.mgrid[0:h, 0:w]
    inside = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius * radius
    canvas[inside] = value


def render_scene(spec: SceneSpec, ee_pos: tuple[float, float, float]) -> GrayImage:
    """Deterministic frame for the current end-effector position."""
    canvas = np.full((spec.size, spec.size), 40.0)
    canvas[int(spec.size * 0.85), :] = 90.0  # shelf line: constant structure
    gx, gy = spec.to_pixel(*spec.goal_xy)
    _disc(canvas, gx, gy, spec.size / 10.0, 230.0)
    ax, ay = spec.to_pixel(ee_pos[0], ee_pos[1])
    # The arm may briefly leave the frame box; clamp so it stays visible.
    ax = float(np.clip(ax, 0, spec.size - 1))
    ay = float(np.clip(ay, 0, spec.size - 1))
    _disc(canvas, ax, ay, spec.size / 14.0, 150.0)
    return GrayImage.from_array(np.clip(canvas, 0, 255).astype(np.uint8))


def synth_attention_inputs(img: GrayImage, grid: TokenGrid, seed: int) -> AttentionInputs:
    """Embeddings and projection weights derived from patch statistics.

    Features per patch are (mean, standard deviation, row, column), all
    scaled to [0, 1], projected into an 8-dim embedding; the query/key/value
    projections come from the same fixed seeded stream, so identical frames
    always produce identical attention.
    """
    p = grid.patch_size
    if img.height != grid.rows * p or img.width != grid.cols * p:
        raise DomainError(
            f"image {img.width}x{img.height} does not match grid "
            f"{grid.cols * p}x{grid.rows * p}"
        )
    px = img.pixels.astype(float) / 255.0
    patches = px.reshape(grid.rows, p, grid.cols, p)
    means = patches.mean(axis=(1, 3)).ravel()
    stds = patches.std(axis=(1, 3)).ravel()
    rows = np.repeat(np.arange(grid.rows), grid.cols) / max(grid.rows - 1, 1)
    cols = np.tile(np.arange(grid.cols), grid.rows) / max(grid.cols - 1, 1)
    feats = np.column_stack([means, stds, rows, cols])

    rng = np.random.default_rng([47, seed])
    proj = rng.normal(size=(4, 8))
    w_q = rng.normal(size=(8, 4))
    w_k = rng.normal(size=(8, 4))
    w_v = rng.normal(size=(8, 4))
    return AttentionInputs(x_emb=feats @ proj, w_q=w_q, w_k=w_k, w_v=w_v)

"""Token pruning that keeps what is salient or structurally sharp.

Spatial tokens are image patches containing at least one edge pixel; they
are always retained.  The remaining budget — a speed-dependent fraction of
the token count — is filled with the highest-scoring non-spatial tokens.
Faster motion blurs the camera stream and lowers the value of dense vision,
so the retain fraction falls linearly from 1 at ``v_p_min`` to 0 at
``v_p_max``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .canny import CannyParams
from .errors import DomainError

__all__ = [
    "TokenGrid",
    "PruningConfig",
    "extract_spatial_tokens",
    "retain_ratio",
    "order_preserving_union",
    "prune_tokens",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TokenGrid:
    """Patch layout of a tokenized image; token index = row * cols + col."""

    patch_size: int
    rows: int
    cols: int

    def __post_init__(self):
        if self.patch_size < 1 or self.rows < 1 or self.cols < 1:
            raise DomainError(
                f"grid dimensions must be positive, got patch={self.patch_size}, "
                f"rows={self.rows}, cols={self.cols}"
            )

    @property
    def total(self) -> int:
        return self.rows * self.cols

    @staticmethod
    def for_image(width: int, height: int, patch_size: int) -> "TokenGrid":
        if patch_size < 1:
            raise DomainError(f"patch size must be positive, got {patch_size}")
        if width % patch_size or height % patch_size:
            raise DomainError(
                f"image {width}x{height} is not tileable by {patch_size}x{patch_size} patches"
            )
        return TokenGrid(patch_size=patch_size, rows=height // patch_size, cols=width // patch_size)


@dataclass(frozen=True)
class PruningConfig:
    """Knobs for the pruning path.

    ``v_p_min``/``v_p_max`` bound the speed-to-retain-ratio ramp; ``t_ks`` is
    the optional diagnostic score threshold (None means budget-driven
    selection only); ``ridge_lambda`` is the penalty the lightweight
    generator uses when this config drives an end-to-end run.
    """

    v_p_min: float = 0.5
    v_p_max: float = 1.0
    t_ks: float | None = None
    ridge_lambda: float = 1e-2
    patch_size: int = 16
    canny: CannyParams = field(default_factory=CannyParams)

    def __post_init__(self):
        if not 0.0 < self.v_p_min < self.v_p_max:
            raise DomainError(
                f"need 0 < v_p_min < v_p_max, got ({self.v_p_min}, {self.v_p_max})"
            )
        if self.t_ks is not None and self.t_ks < 0:
            raise DomainError(f"t_ks must be >= 0, got {self.t_ks}")
        if self.ridge_lambda < 0:
            raise DomainError(f"ridge_lambda must be >= 0, got {self.ridge_lambda}")
        if self.patch_size < 1:
            raise DomainError(f"patch size must be positive, got {self.patch_size}")


def extract_spatial_tokens(mask: np.ndarray, grid: TokenGrid) -> list[int]:
    """Ascending indices of patches containing at least one edge pixel."""
    m = np.asarray(mask, dtype=bool)
    expect = (grid.rows * grid.patch_size, grid.cols * grid.patch_size)
    if m.shape != expect:
        raise DomainError(f"mask shape {m.shape} does not match grid pixels {expect}")
    p = grid.patch_size
    per_patch = m.reshape(grid.rows, p, grid.cols, p).any(axis=(1, 3))
    return [int(i) for i in np.nonzero(per_patch.ravel())[0]]


def retain_ratio(v: float, cfg: PruningConfig) -> float:
    """Fraction of tokens to keep at speed ``v``.

    1 below ``v_p_min``, falling linearly to 0 at ``v_p_max``.  A speed
    beyond the cap clamps to 0 with a logged warning rather than failing.
    """
    if v < 0:
        raise DomainError(f"speed must be >= 0, got {v}")
    if v > cfg.v_p_max:
        logger.warning("speed %.6g exceeds v_p_max %.6g; retaining no prunable tokens", v, cfg.v_p_max)
        return 0.0
    if v < cfg.v_p_min:
        return 1.0
    return 1.0 - (v - cfg.v_p_min) / (cfg.v_p_max - cfg.v_p_min)


def _check_ascending(name: str, seq: list[int]) -> None:
    if any(b <= a for a, b in zip(seq, seq[1:])):
        raise DomainError(f"{name} must be strictly ascending, got {seq}")


def order_preserving_union(a: list[int], b: list[int]) -> list[int]:
    """Merge two strictly ascending index lists into one, preserving order."""
    _check_ascending("first index list", list(a))
    _check_ascending("second index list", list(b))
    return sorted(set(a) | set(b))


def prune_tokens(
    scores: np.ndarray,
    spatial: list[int],
    v: float,
    grid: TokenGrid,
    cfg: PruningConfig,
) -> list[int]:
    """Kept token indices, ascending, for one image at speed ``v``.

    Budget = ceil(retain_ratio * total).  Spatial tokens are kept
    unconditionally (even past the budget); any remaining budget is filled
    with the highest-scoring non-spatial tokens, breaking score ties toward
    the lower index.
    """
    n = grid.total
    s = np.asarray(scores, dtype=float)
    if s.shape != (n,):
        raise DomainError(f"expected {n} scores for the grid, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise DomainError("token scores contain non-finite values")
    sp = list(spatial)
    _check_ascending("spatial token list", sp)
    if sp and (sp[0] < 0 or sp[-1] >= n):
        raise DomainError(f"spatial token indices out of range for {n} tokens")

    budget = math.ceil(retain_ratio(v, cfg) * n)
    remaining = budget - len(sp)
    if remaining <= 0:
        return sp
    sp_set = set(sp)
    rest = [i for i in range(n) if i not in sp_set]
    rest.sort(key=lambda i: (-s[i], i))
    return sorted(sp_set | set(rest[:remaining]))

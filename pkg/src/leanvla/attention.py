"""Semantic token scoring from single-head self-attention.

Importance of a token is the average attention it receives from every
query, i.e. the column mean of the row-stochastic attention-weight matrix.
Because each row sums to one, the scores always sum to one as well, so they
are directly comparable across images and speeds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "AttentionInputs",
    "attention_weights",
    "accumulate_importance",
    "select_semantic",
]


@dataclass(frozen=True)
class AttentionInputs:
    """Token embeddings plus query/key/value projections for one attention head."""

    x_emb: np.ndarray  # (N, d)
    w_q: np.ndarray  # (d, d_k)
    w_k: np.ndarray  # (d, d_k)
    w_v: np.ndarray  # (d, d_k)

    def __post_init__(self):
        x = np.asarray(self.x_emb)
        if x.ndim != 2 or x.shape[0] < 1:
            raise DomainError(f"embeddings must be a non-empty 2-D array, got shape {x.shape}")
        d = x.shape[1]
        for name, w in (("w_q", self.w_q), ("w_k", self.w_k), ("w_v", self.w_v)):
            w = np.asarray(w)
            if w.ndim != 2 or w.shape[0] != d:
                raise DomainError(f"{name} must have shape ({d}, d_k), got {w.shape}")
        if not all(
            np.all(np.isfinite(np.asarray(a)))
            for a in (self.x_emb, self.w_q, self.w_k, self.w_v)
        ):
            raise DomainError("attention inputs contain non-finite values")


def attention_weights(inputs: AttentionInputs) -> np.ndarray:
    """Row-stochastic N x N attention matrix: softmax(Q K^T / sqrt(d_k)) per row."""
    q = inputs.x_emb @ inputs.w_q
    k = inputs.x_emb @ inputs.w_k
    d_k = q.shape[1]
    logits = (q @ k.T) / np.sqrt(float(d_k))
    logits -= logits.max(axis=1, keepdims=True)  # stabilize before exponentiation
    e = np.exp(logits)
    w = e / e.sum(axis=1, keepdims=True)
    if not np.all(np.isfinite(w)):
        raise DomainError("attention weights are non-finite")
    return w


def accumulate_importance(weights: np.ndarray) -> np.ndarray:
    """Column means of a row-stochastic attention matrix; sums to 1."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
        raise DomainError(f"attention matrix must be square and non-empty, got shape {w.shape}")
    rowsums = w.sum(axis=1)
    if np.any(np.abs(rowsums - 1.0) > 1e-6):
        raise DomainError("attention matrix rows must each sum to 1")
    return w.mean(axis=0)


def select_semantic(scores: np.ndarray, t_ks: float) -> list[int]:
    """Indices whose score strictly exceeds the threshold, ascending.

    Diagnostic view of the semantic token set; end-to-end pruning is
    budget-driven and does not use this threshold.
    """
    if t_ks < 0:
        raise DomainError(f"score threshold must be >= 0, got {t_ks}")
    s = np.asarray(scores, dtype=float)
    if s.ndim != 1:
        raise DomainError(f"scores must be 1-D, got shape {s.shape}")
    return [int(i) for i in np.nonzero(s > t_ks)[0]]

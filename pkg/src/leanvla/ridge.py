"""Lightweight action generator: ridge regression over the buffered history.

Each of the six continuous channels is fit as an affine function of the
step index.  The buffer's entries are relabelled 0..n-1 at every fit, so the
prediction for the step after the buffer is always evaluated at index n.
The gripper channel is never regressed; the previous gripper value is
carried forward unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import Action, ActionBuffer
from .errors import DomainError, PredictionRejected

__all__ = ["RidgeModel", "fit_ridge", "predict_next", "generate_action"]

# Continuous channels per action: 3 translational + 3 rotational.
N_CHANNELS = 6


@dataclass(frozen=True)
class RidgeModel:
    """Fitted coefficients: row 0 is the slope, row 1 the intercept, one column per channel."""

    beta: np.ndarray  # shape (2, 6)
    lam: float
    n: int  # number of samples the fit consumed


def fit_ridge(buf: ActionBuffer, lam: float) -> RidgeModel:
    """Closed-form ridge fit of the buffered continuous channels.

    Solves (X^T X + lam*I) beta = X^T Y where X stacks [index, 1] rows for
    indices 0..n-1 and Y is the n x 6 matrix of channel values.  The penalty
    applies to slope and intercept alike.
    """
    if lam < 0:
        raise DomainError(f"ridge penalty must be >= 0, got {lam}")
    acts = buf.actions()
    n = len(acts)
    if n < 2:
        raise DomainError(f"ridge fit needs at least 2 buffered actions, got {n}")
    y = np.array([a.continuous for a in acts], dtype=float)
    if not np.all(np.isfinite(y)):
        raise DomainError("buffered actions contain non-finite channel values")
    t = np.arange(n, dtype=float)
    x = np.column_stack([t, np.ones(n)])
    lhs = x.T @ x + lam * np.eye(2)
    beta = np.linalg.solve(lhs, x.T @ y)
    return RidgeModel(beta=beta, lam=lam, n=n)


def predict_next(model: RidgeModel, t: int) -> np.ndarray:
    """Evaluate the fitted lines at index ``t``; returns the 6 continuous channels."""
    row = np.array([float(t), 1.0])
    return row @ model.beta


def generate_action(
    buf: ActionBuffer,
    lam: float,
    prev: Action,
    v_cap: float = 1.0,
    k_sigma: float = 3.0,
) -> Action:
    """Predict the next action from a full buffer, guarding with a validity gate.

    The gate rejects the prediction when any channel is non-finite, any
    translational magnitude exceeds the environment speed cap ``v_cap``, or
    any channel strays more than ``k_sigma`` sample standard deviations from
    its buffer mean.  The deviation tolerance includes an allowance of
    ``lam * |mean|`` for the deliberate shrinkage bias of the penalized fit
    (plus a tiny absolute floor), so an exactly predictable history — e.g. a
    constant channel, whose sample deviation is zero — is not spuriously
    rejected.  On rejection a ``PredictionRejected`` is raised and the caller
    should run the full policy instead.
    """
    if not buf.full:
        raise DomainError(
            f"lightweight generation needs a full buffer ({buf.capacity} entries), got {len(buf)}"
        )
    model = fit_ridge(buf, lam)
    pred = predict_next(model, model.n)

    if not np.all(np.isfinite(pred)):
        raise PredictionRejected("non-finite prediction")
    trans = pred[:3]
    if np.any(np.abs(trans) > v_cap):
        worst = float(np.max(np.abs(trans)))
        raise PredictionRejected(f"translational magnitude {worst:.6g} exceeds cap {v_cap:.6g}")
    hist = np.array([a.continuous for a in buf.actions()], dtype=float)
    mean = hist.mean(axis=0)
    sigma = hist.std(axis=0, ddof=1)
    dev = np.abs(pred - mean)
    tol = k_sigma * sigma + lam * np.abs(mean) + 1e-9
    if np.any(dev > tol):
        ch = int(np.argmax(dev - tol))
        raise PredictionRejected(
            f"channel {ch} deviates {dev[ch]:.6g} from buffer mean (tolerance {tol[ch]:.6g})"
        )
    return Action(
        trans=(float(pred[0]), float(pred[1]), float(pred[2])),
        rot=(float(pred[3]), float(pred[4]), float(pred[5])),
        gripper=prev.gripper,
    )

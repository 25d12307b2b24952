import numpy as np
import pytest

from leanvla.actions import Action, ActionBuffer, ActionSource
from leanvla.errors import DomainError, PredictionRejected
from leanvla.ridge import fit_ridge, generate_action, predict_next

from oracles import ridge_direct, ridge_gd


def buffer_from_matrix(ys: np.ndarray, capacity=None) -> ActionBuffer:
    """Rows of ``ys`` (n x 6) become buffered actions, oldest first."""
    buf = ActionBuffer(capacity=capacity or ys.shape[0])
    for row in ys:
        buf = buf.push(
            Action(trans=tuple(row[:3]), rot=tuple(row[3:]), gripper=0.0), ActionSource.VLA
        )
    return buf


def ramp_buffer(slopes, intercepts, n=6) -> ActionBuffer:
    t = np.arange(n)[:, None]
    ys = t * np.asarray(slopes)[None, :] + np.asarray(intercepts)[None, :]
    return buffer_from_matrix(ys)


class TestFit:
    def test_matches_direct_solve_on_random_buffers(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            ys = rng.uniform(-1.0, 1.0, size=(6, 6))
            for lam in (0.0, 0.01, 0.1, 1.0):
                got = fit_ridge(buffer_from_matrix(ys), lam).beta
                want = ridge_direct(ys, lam)
                assert np.max(np.abs(got - want)) <= 1e-9

    def test_matches_gradient_descent(self):
        rng = np.random.default_rng(6)
        ys = rng.uniform(-1.0, 1.0, size=(6, 6))
        for lam in (0.0, 0.1, 1.0):
            got = fit_ridge(buffer_from_matrix(ys), lam).beta
            assert np.max(np.abs(got - ridge_gd(ys, lam))) <= 1e-6

    def test_unpenalized_fit_recovers_exact_line(self):
        buf = ramp_buffer([0.1, 0.0, -0.2, 0.0, 0.0, 0.0], [0.0, 0.4, 1.0, 0.0, 0.0, 0.0])
        model = fit_ridge(buf, 0.0)
        assert np.allclose(model.beta[0], [0.1, 0.0, -0.2, 0.0, 0.0, 0.0], atol=1e-12)
        assert np.allclose(model.beta[1], [0.0, 0.4, 1.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_penalty_shrinks_coefficient_norm(self):
        # Ridge shrinks the (slope, intercept) norm per channel; individual
        # components may grow when the design is correlated.
        buf = ramp_buffer([0.1] * 6, [0.2] * 6)
        loose = fit_ridge(buf, 0.0).beta
        tight = fit_ridge(buf, 10.0).beta
        assert np.all(
            np.linalg.norm(tight, axis=0) < np.linalg.norm(loose, axis=0) + 1e-12
        )

    def test_indices_relabelled_from_zero(self):
        """The same actions give the same fit regardless of buffer history."""
        ys = np.linspace(0.0, 0.5, 6)[:, None] * np.ones((1, 6))
        direct = buffer_from_matrix(ys)
        # Same rows arriving after earlier entries were evicted.
        shifted = ActionBuffer(capacity=6)
        for v in (0.9, 0.8, 0.7):
            shifted = shifted.push(
                Action(trans=(v, v, v), rot=(v, v, v), gripper=0.0), ActionSource.VLA
            )
        for row in ys:
            shifted = shifted.push(
                Action(trans=tuple(row[:3]), rot=tuple(row[3:]), gripper=0.0), ActionSource.VLA
            )
        a = fit_ridge(direct, 0.01).beta
        b = fit_ridge(shifted, 0.01).beta
        assert np.array_equal(a, b)

    def test_negative_penalty_rejected(self):
        with pytest.raises(DomainError):
            fit_ridge(ramp_buffer([0.1] * 6, [0.0] * 6), -1e-3)

    def test_single_action_rejected(self):
        buf = ActionBuffer(capacity=2).push(
            Action(trans=(0.1, 0.1, 0.1), rot=(0.0, 0.0, 0.0), gripper=0.0), ActionSource.VLA
        )
        with pytest.raises(DomainError):
            fit_ridge(buf, 0.0)


class TestPredict:
    def test_extrapolates_one_past_buffer(self):
        buf = ramp_buffer([0.05, -0.05, 0.0, 0.0, 0.0, 0.0], [0.1, 0.6, 0.3, 0.0, 0.0, 0.0])
        model = fit_ridge(buf, 0.0)
        pred = predict_next(model, model.n)
        assert pred[0] == pytest.approx(0.1 + 0.05 * 6, abs=1e-12)
        assert pred[1] == pytest.approx(0.6 - 0.05 * 6, abs=1e-12)
        assert pred[2] == pytest.approx(0.3, abs=1e-12)


class TestGenerate:
    def test_continues_linear_ramp(self):
        buf = ramp_buffer([0.04, 0.04, 0.04, 0.0, 0.0, 0.0], [0.2, 0.25, 0.3, 0.0, 0.0, 0.0])
        prev = buf.last()
        out = generate_action(buf, 0.0, prev)
        assert out.trans == pytest.approx((0.44, 0.49, 0.54), abs=1e-12)
        assert out.rot == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)

    def test_gripper_carried_from_prev(self):
        buf = ramp_buffer([0.01] * 6, [0.3] * 6)
        prev = Action(trans=(0.35, 0.35, 0.35), rot=(0.0, 0.0, 0.0), gripper=1.0)
        assert generate_action(buf, 0.0, prev).gripper == 1.0

    def test_requires_full_buffer(self):
        buf = ActionBuffer(capacity=6)
        for i in range(4):
            buf = buf.push(
                Action(trans=(0.1 * i, 0.1, 0.1), rot=(0.0, 0.0, 0.0), gripper=0.0),
                ActionSource.VLA,
            )
        with pytest.raises(DomainError):
            generate_action(buf, 0.01, buf.last())

    def test_alternating_extremes_rejected_by_speed_cap(self):
        ys = np.zeros((6, 6))
        ys[:, 0] = [10.0, -10.0, 10.0, -10.0, 10.0, -10.0]
        buf = buffer_from_matrix(ys)
        with pytest.raises(PredictionRejected, match="cap"):
            generate_action(buf, 0.01, buf.last(), v_cap=1.0)

    def test_deviation_gate_fires_with_tight_k(self):
        # A straight-line history extrapolates ~1.87 sigma past its own mean
        # (the largest ratio any six-step window can produce), so a 1.5-sigma
        # gate rejects it even though the fit itself is exact.
        buf = ramp_buffer([0.0, 0.1, 0.0, 0.0, 0.0, 0.0], [0.0] * 6)
        with pytest.raises(PredictionRejected, match="deviates"):
            generate_action(buf, 0.0, buf.last(), v_cap=10.0, k_sigma=1.5)

    def test_constant_channels_not_rejected_by_shrinkage(self):
        """A perfectly constant history has sigma 0; the shrinkage allowance
        must keep the default penalty from tripping the deviation gate."""
        buf = ramp_buffer([0.0] * 6, [0.3, 0.3, 0.3, 0.0, 0.0, 0.0])
        out = generate_action(buf, 0.01, buf.last())
        assert out.trans == pytest.approx((0.3, 0.3, 0.3), rel=0.01)

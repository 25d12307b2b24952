import math

import pytest

from leanvla.actions import Action, ActionBuffer, ActionSource, SchedulerConfig
from leanvla.errors import DomainError


def make_action(ax=0.3, ay=0.3, az=0.3, grip=0.0):
    return Action(trans=(ax, ay, az), rot=(0.0, 0.0, 0.0), gripper=grip)


class TestAction:
    def test_continuous_concatenates_trans_then_rot(self):
        a = Action(trans=(1.0, 2.0, 3.0), rot=(4.0, 5.0, 6.0), gripper=1.0)
        assert a.continuous == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)

    def test_translational_speed_is_largest_component_magnitude(self):
        a = Action(trans=(0.1, -0.7, 0.3), rot=(0.0, 0.0, 0.0), gripper=0.0)
        assert a.translational_speed() == 0.7

    def test_rejects_non_finite_channels(self):
        with pytest.raises(DomainError):
            Action(trans=(math.nan, 0.0, 0.0), rot=(0.0, 0.0, 0.0), gripper=0.0)
        with pytest.raises(DomainError):
            Action(trans=(0.0, 0.0, 0.0), rot=(math.inf, 0.0, 0.0), gripper=0.0)

    def test_rejects_fractional_gripper(self):
        with pytest.raises(DomainError):
            make_action(grip=0.5)

    def test_rejects_wrong_arity(self):
        with pytest.raises(DomainError):
            Action(trans=(0.0, 0.0), rot=(0.0, 0.0, 0.0), gripper=0.0)  # type: ignore[arg-type]

    def test_is_hashable_value(self):
        assert make_action() == make_action()
        assert hash(make_action()) == hash(make_action())


class TestActionBuffer:
    def test_push_appends_until_capacity(self):
        buf = ActionBuffer(capacity=3)
        for i in range(3):
            buf = buf.push(make_action(ax=0.1 * (i + 1)), ActionSource.VLA)
        assert len(buf) == 3 and buf.full
        assert buf.last().trans[0] == pytest.approx(0.3)

    def test_push_evicts_oldest_when_full(self):
        buf = ActionBuffer(capacity=2)
        a, b, c = make_action(ax=0.1), make_action(ax=0.2), make_action(ax=0.3)
        buf = buf.push(a, ActionSource.VLA).push(b, ActionSource.VLA).push(c, ActionSource.LWM)
        assert buf.actions() == (b, c)

    def test_push_does_not_mutate_original(self):
        empty = ActionBuffer(capacity=2)
        full = empty.push(make_action(), ActionSource.VLA)
        assert len(empty) == 0 and len(full) == 1

    def test_vla_ratio_counts_sources(self):
        buf = ActionBuffer(capacity=4)
        for src in (ActionSource.VLA, ActionSource.VLA, ActionSource.LWM, ActionSource.VLA):
            buf = buf.push(make_action(), src)
        assert buf.vla_ratio() == 0.75

    def test_vla_ratio_empty_raises(self):
        with pytest.raises(DomainError):
            ActionBuffer(capacity=2).vla_ratio()

    def test_last_empty_raises(self):
        with pytest.raises(DomainError):
            ActionBuffer(capacity=2).last()

    def test_capacity_below_two_rejected(self):
        with pytest.raises(DomainError):
            ActionBuffer(capacity=1)


class TestSchedulerConfig:
    def test_defaults(self):
        cfg = SchedulerConfig()
        assert (cfg.v_min, cfg.v_max, cfg.tau, cfg.buffer_len) == (0.2, 0.5, 0.5, 6)

    def test_tau_one_allowed_as_disable_value(self):
        assert SchedulerConfig(tau=1.0).tau == 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"v_min": 0.0},
            {"v_min": 0.5, "v_max": 0.5},
            {"v_min": 0.6, "v_max": 0.5},
            {"tau": 0.0},
            {"tau": 1.2},
            {"buffer_len": 1},
        ],
    )
    def test_invalid_values_rejected(self, kwargs):
        with pytest.raises(DomainError):
            SchedulerConfig(**kwargs)

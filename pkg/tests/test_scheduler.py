import itertools

import pytest

from leanvla.actions import Action, ActionBuffer, ActionSource, SchedulerConfig
from leanvla.scheduler import ActionType, TriggerReason, classify_action_type, lwm_trigger

from oracles import trigger_predicate


def act(ax, ay=None, az=None, grip=0.0):
    ay = ax if ay is None else ay
    az = ax if az is None else az
    return Action(trans=(ax, ay, az), rot=(0.0, 0.0, 0.0), gripper=grip)


def build_buffer(capacity, n_vla, n_lwm):
    buf = ActionBuffer(capacity=capacity)
    for _ in range(n_vla):
        buf = buf.push(act(0.3), ActionSource.VLA)
    for _ in range(n_lwm):
        buf = buf.push(act(0.3), ActionSource.LWM)
    return buf


class TestClassify:
    def test_all_components_above_v_min_is_intuitive(self):
        assert classify_action_type(act(0.21, 0.3, 0.4), SchedulerConfig()) is ActionType.INTUITIVE

    def test_negative_components_count_by_magnitude(self):
        assert classify_action_type(act(-0.21, -0.3, 0.4), SchedulerConfig()) is ActionType.INTUITIVE

    def test_any_slow_component_is_deliberative(self):
        assert classify_action_type(act(0.3, 0.1, 0.3), SchedulerConfig()) is ActionType.DELIBERATIVE

    def test_boundary_is_strict(self):
        assert classify_action_type(act(0.2, 0.3, 0.3), SchedulerConfig()) is ActionType.DELIBERATIVE


class TestTrigger:
    def test_short_buffer_blocks(self):
        cfg = SchedulerConfig()
        d = lwm_trigger(act(0.3), build_buffer(6, 5, 0), cfg)
        assert d.reason is TriggerReason.BUFFER_TOO_SHORT and not d.use_lwm

    def test_speed_checked_before_ratio(self):
        # Both gates fail; the reported reason must be the speed gate.
        cfg = SchedulerConfig()
        d = lwm_trigger(act(0.7), build_buffer(6, 0, 6), cfg)
        assert d.reason is TriggerReason.SPEED_OUT_OF_WINDOW

    def test_ratio_not_above_tau_blocks(self):
        cfg = SchedulerConfig()
        d = lwm_trigger(act(0.3), build_buffer(6, 3, 3), cfg)  # ratio exactly tau
        assert d.reason is TriggerReason.RATIO_TOO_LOW

    def test_eligible(self):
        cfg = SchedulerConfig()
        d = lwm_trigger(act(0.3), build_buffer(6, 6, 0), cfg)
        assert d.reason is TriggerReason.ELIGIBLE and d.use_lwm

    @pytest.mark.parametrize("speed", [0.2, 0.5])
    def test_window_boundaries_are_strict(self, speed):
        d = lwm_trigger(act(speed), build_buffer(6, 6, 0), SchedulerConfig())
        assert d.reason is TriggerReason.SPEED_OUT_OF_WINDOW

    def test_one_slow_component_blocks(self):
        d = lwm_trigger(act(0.3, 0.19, 0.3), build_buffer(6, 6, 0), SchedulerConfig())
        assert d.reason is TriggerReason.SPEED_OUT_OF_WINDOW

    def test_negative_in_window_component_is_eligible(self):
        d = lwm_trigger(act(-0.3, 0.3, -0.49), build_buffer(6, 6, 0), SchedulerConfig())
        assert d.use_lwm

    def test_tau_one_never_triggers(self):
        d = lwm_trigger(act(0.3), build_buffer(6, 6, 0), SchedulerConfig(tau=1.0))
        assert d.reason is TriggerReason.RATIO_TOO_LOW

    def test_exhaustive_grid_matches_reference_predicate(self):
        """Mixed-sign speed grid x realizable ratios against the one-liner."""
        cfg = SchedulerConfig()
        speeds = (0.0, 0.1, 0.2, 0.21, 0.3, 0.49, 0.5, 0.6)
        for combo in itertools.product(speeds, repeat=3):
            signed = tuple(s if i % 2 == 0 else -s for i, s in enumerate(combo))
            prev = Action(trans=signed, rot=(0.0, 0.0, 0.0), gripper=0.0)
            for n_vla in (0, 3, 4, 6):
                buf = build_buffer(6, n_vla, 6 - n_vla)
                want = trigger_predicate(
                    signed, n_vla / 6, True, cfg.v_min, cfg.v_max, cfg.tau
                )
                assert lwm_trigger(prev, buf, cfg).use_lwm == want

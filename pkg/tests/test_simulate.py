import csv
import math

import numpy as np
import pytest

from tguard import finite, verify
from tguard import simulate as sim
from tguard.errors import AtCaptureSurface
from tguard.game import MovingFrameState, make_params
from tguard.simulate import OutcomeKind, SimConfig, StrategyPair, TargetMode


def test_scenario_one_breach(fig_params, s1):
    out = sim.simulate(s1, fig_params)
    assert out.kind is OutcomeKind.BREACH
    assert out.miss == pytest.approx(0.1922, abs=5e-3)
    assert out.miss == pytest.approx(finite.value(s1, fig_params), abs=1e-6)
    assert out.attacker_won and out.mirrored
    # the recorded path stays in the caller's orientation
    assert out.trajectory[0][3] == 0.15
    assert all(r[3] >= -1e-9 for r in out.trajectory)


def test_scenario_two_capture(fig_params, s2):
    out = sim.simulate(s2, fig_params)
    assert out.kind is OutcomeKind.CAPTURE
    assert sim.payoff(out) is None
    assert abs(out.x_A - out.x_D) <= 1e-8
    assert out.trajectory[-1][-1] == "capture"


def test_deterministic(fig_params, s1):
    a = sim.simulate(s1, fig_params)
    b = sim.simulate(s1, fig_params)
    assert a.trajectory == b.trajectory


def test_payoff_matches_value_on_random_states():
    rng = np.random.default_rng(11)
    cases = verify.random_cases(rng, 200, lambda V: V > 0.02)
    worst = 0.0
    for state, params, V in cases:
        out = sim.simulate_equilibrium(state, params)
        assert out.kind is OutcomeKind.BREACH
        worst = max(worst, abs(out.miss - V))
    assert worst <= 5e-3


def test_halving_dt_does_not_increase_error(fig_params):
    state = MovingFrameState(0.1, 1.3, -0.2)
    V = finite.value(state, fig_params)
    errs = [abs(sim.simulate_equilibrium(state, fig_params, dt=dt).miss - V)
            for dt in (4e-3, 2e-3, 1e-3)]
    for coarse, fine_ in zip(errs, errs[1:]):
        assert fine_ <= coarse / 2 + 1e-9


def test_defender_clamped_to_segment(fig_params):
    pair = StrategyPair(sim.ConstantHeading(-math.pi / 2), sim.ConstantW(1.0))
    out = sim.simulate(MovingFrameState(0.9, 0.0, -0.5), fig_params, pair, SimConfig(max_time=3.0))
    assert out.kind is OutcomeKind.TRUNCATED
    assert max(r[1] for r in out.trajectory) == 1.0


def test_offtarget(fig_params):
    # straight down in the inertial frame drifts behind the target
    pair = StrategyPair(sim.ConstantHeading(math.pi / 2), sim.ConstantW(1.0))
    out = sim.simulate(MovingFrameState(1.0, 0.05, -0.5), fig_params, pair)
    assert out.kind is OutcomeKind.OFF_TARGET
    assert out.x_A < 0 and sim.payoff(out) is None


def test_infinite_mode_has_no_offtarget(fig_params):
    pair = StrategyPair(sim.ConstantHeading(math.pi / 2), sim.ConstantW(1.0))
    cfg = SimConfig(target_mode=TargetMode.INFINITE)
    out = sim.simulate(MovingFrameState(1.0, 0.05, -0.5), fig_params, pair, cfg)
    assert out.kind is OutcomeKind.BREACH


def test_starting_on_capture_surface(fig_params):
    out = sim.simulate(MovingFrameState(0.4, 0.4, -0.3), fig_params)
    assert out.kind is OutcomeKind.CAPTURE and out.t_f == 0.0


def test_attack_from_axis_start(fig_params):
    out = sim.simulate(MovingFrameState(0.2, 0.6, 0.0), fig_params)
    assert out.kind is OutcomeKind.BREACH and out.t_f == 0.0
    assert out.miss == pytest.approx(0.4)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(dt=0.0)
    with pytest.raises(ValueError):
        SimConfig(dt=1e-3, event_tol=1e-2)
    with pytest.raises(ValueError):
        SimConfig(max_time=-1.0)


def test_finite_mode_needs_finite_target():
    with pytest.raises(ValueError):
        sim.simulate(MovingFrameState(0, 1, -1), make_params(0.6, 0.35),
                     config=SimConfig(target_mode=TargetMode.FINITE))


def test_flow_field_lines_are_straight():
    p = make_params(0.7, 0.2)
    lines = sim.flow_field(p, [(0.5, -0.5), (-0.5, -0.5)])
    for pts, kind in lines:
        xy = np.array(pts)
        slope = np.polyfit(xy[:, 0], xy[:, 1], 1)[0]
        assert np.allclose(xy[:, 1], xy[0, 1] + slope * (xy[:, 0] - xy[0, 0]), atol=1e-9)
    with pytest.raises(AtCaptureSurface):
        sim.flow_field(p, [(0.0, -0.5)])


def test_trajectory_csv(tmp_path, fig_params, s1):
    out = sim.simulate(s1, fig_params)
    path = tmp_path / "t.csv"
    sim.write_trajectory_csv(out, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["t", "x_D", "x_A", "y_A", "w", "cos_phi", "sin_phi", "event"]
    assert rows[-1][-1] == "breach"
    assert all(r[-1] == "" for r in rows[1:-1])
    assert len(rows) == len(out.trajectory) + 1

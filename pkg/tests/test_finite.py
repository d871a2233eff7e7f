import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from tguard import finite, infinite, simulate as sim
from tguard.game import GameParams, MovingFrameState, Side, make_params, static_params
from tguard.infinite import Regime


def test_scenario_one_value(fig_params, s1):
    d = finite.solve(s1, fig_params)
    assert d.value == pytest.approx(0.19220649, abs=1e-8)
    assert d.regime is Regime.ENDPOINT_AIM
    assert d.mirrored
    assert (d.heading.c, d.heading.s) == pytest.approx((0.583333, -0.812233), abs=1e-6)
    assert d.m == pytest.approx(-0.487340, abs=1e-6)
    assert d.w_D == -1


def test_scenario_two_value(fig_params, s2):
    d = finite.solve(s2, fig_params)
    assert d.value == pytest.approx(-0.15311289, abs=1e-8)
    assert d.regime is Regime.INFINITE_FORM
    assert d.m == pytest.approx(-0.496139, abs=1e-6)
    assert not d.mirrored


def test_scenario_two_aim_point_matches_simulated_ray(fig_params, s2):
    aim = finite.aim_point(s2, fig_params)
    assert aim.x_B == pytest.approx(0.718991, abs=1e-6)
    assert aim.m_B == pytest.approx(2.015565, abs=1e-6)
    # hold the infinite-form heading and see where the attacker lands
    h = infinite.equilibrium_heading_infinite(fig_params, Side.ATTACKER_AHEAD)
    pair = sim.StrategyPair(sim.ConstantHeading(h.angle), sim.ConstantW(0.0))
    cfg = sim.SimConfig(target_mode=sim.TargetMode.INFINITE, record=False)
    out = sim.simulate(MovingFrameState(-5.0, s2.x_A, s2.y_A), fig_params, pair, cfg)
    assert out.x_A == pytest.approx(aim.x_B, abs=1e-8)


def test_scenario_one_endpoint_geometry(fig_params, s1):
    g = finite.endpoint_heading(MovingFrameState(0.5, 0.0, -0.15), fig_params)
    assert g.x_E == 0.0
    assert g.d_EA == pytest.approx(0.15)
    assert g.v_hat == pytest.approx(0.487340, abs=1e-6)


def test_static_target_heads_straight_down():
    p = static_params(0.5, 1.0)
    d = finite.solve(MovingFrameState(0.2, -0.3, -0.4), p)
    assert d.regime is Regime.ENDPOINT_AIM
    assert d.heading.c == pytest.approx(0.6) and d.heading.s == pytest.approx(0.8)


@st.composite
def game(draw):
    v_T = draw(st.floats(0.02, 0.45))
    v_A = draw(st.floats(v_T + 1e-3, 1 - v_T - 1e-3))
    L = draw(st.floats(0.1, 3.0))
    x_D = draw(st.floats(0, L))
    x_A = draw(st.floats(-1, L + 1))
    y_A = draw(st.floats(-2, -1e-3))
    assume(abs(x_A - x_D) > 1e-6)
    return make_params(v_A, v_T, L), MovingFrameState(x_D, x_A, y_A)


@given(game())
def test_finite_value_never_exceeds_infinite(g):
    p, s = g
    inf = infinite.value_infinite(s, GameParams(p.v_A, p.v_T)).value
    assert finite.value(s, p) <= inf + 1e-12


@given(game())
def test_heading_is_unit_and_points_at_target_line(g):
    p, s = g
    d = finite.solve(s, p)
    assert math.hypot(d.heading.c, d.heading.s) == pytest.approx(1.0, abs=1e-12)
    assert p.v_A * d.heading.s > 0


@given(game())
def test_mirror_symmetry(g):
    p, s = g
    up = MovingFrameState(s.x_D, s.x_A, -s.y_A)
    a, b = finite.solve(s, p), finite.solve(up, p)
    assert a.value == b.value
    assert b.heading.s == -a.heading.s and b.m == -a.m


@settings(max_examples=50)
@given(game())
def test_regime_continuity_at_segment_ends(g):
    p, s = g
    aim = finite.aim_point(s, p)
    for edge in (0.0, p.L):
        # move the attacker so its infinite-form ray lands exactly on the edge
        x_A = s.x_A + edge - aim.x_B
        assume(abs(x_A - s.x_D) > 1e-3)
        for eps in (-1e-9, 1e-9):
            probe = MovingFrameState(s.x_D, x_A + eps, s.y_A)
            base = MovingFrameState(s.x_D, x_A, s.y_A)
            assert finite.value(probe, p) == pytest.approx(finite.value(base, p), abs=1e-6)


def test_value_on_target_line():
    p = make_params(0.6, 0.35, 1.0)
    assert finite.value(MovingFrameState(0.2, 0.5, 0.0), p) == pytest.approx(0.3)
    assert finite.value(MovingFrameState(0.8, 0.5, 0.0), p) == pytest.approx(0.3)


def test_sign_pattern(fig_params):
    # just above the segment and far from the defender vs deep below the defender
    assert finite.value(MovingFrameState(0.5, 0.05, -0.01), fig_params) > 0.4
    assert finite.value(MovingFrameState(0.5, 0.52, -0.9), fig_params) < -0.5


def test_scalar_path_agrees_with_solve(fig_params):
    for x in np.linspace(-0.4, 1.4, 7):
        for y in (-0.8, -0.1):
            s = MovingFrameState(0.3, float(x), y)
            c, sn, w, regime = finite.equilibrium_controls(0.3, float(x), y, 0.6, 0.35, 1.0)
            d = finite.solve(s, fig_params)
            assert (c, sn, w, regime) == (d.heading.c, d.heading.s, d.w_D, d.regime)

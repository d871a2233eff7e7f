import math

import pytest
from hypothesis import given, strategies as st

from tguard import infinite
from tguard.errors import AtCaptureSurface, DegenerateSlope
from tguard.game import GameParams, MovingFrameState, Side, UnitHeading, make_params, static_params
from tguard.infinite import Regime

AHEAD, BEHIND = Side.ATTACKER_AHEAD, Side.DEFENDER_AHEAD


@st.composite
def valid_params(draw):
    v_T = draw(st.floats(0.01, 0.48))
    v_A = draw(st.floats(v_T + 1e-3, 1 - v_T - 1e-3))
    return make_params(v_A, v_T)


def test_eta_examples():
    p = make_params(0.7, 0.2)
    assert infinite.eta(p, AHEAD) == pytest.approx(1.392399, abs=1e-6)
    assert infinite.eta(p, BEHIND) == pytest.approx(0.553283, abs=1e-6)
    # stationary target: both sides agree
    q = static_params(0.5)
    assert infinite.eta(q, AHEAD) == infinite.eta(q, BEHIND) == pytest.approx(math.sqrt(3))


def test_m1_examples():
    p = make_params(0.7, 0.2)
    assert infinite.m1(p, AHEAD) == pytest.approx(-0.718185, abs=1e-6)
    assert infinite.m1(p, BEHIND) == pytest.approx(1.807392, abs=1e-6)


def test_adjoints():
    p = make_params(0.7, 0.2)
    a = infinite.adjoints(p, BEHIND)
    assert (a.sigma_xD, a.sigma_xA) == (1.0, -1.0)
    assert a.sigma_yA == infinite.eta(p, BEHIND)


def test_infinite_value_example(fig_params):
    p = GameParams(fig_params.v_A, fig_params.v_T)
    d = infinite.value_infinite(MovingFrameState(0.5, 0.0, -0.15), p)
    assert d.value == pytest.approx(0.4375, abs=1e-6)
    assert d.regime is Regime.INFINITE_FORM
    assert d.w_D == -1


def test_value_on_terminal_line_is_abs_x():
    p = make_params(0.6, 0.35)
    assert infinite.value_infinite(MovingFrameState(0.2, 0.5, 0.0), p).value == pytest.approx(0.3)


def test_capture_surface_raises():
    with pytest.raises(AtCaptureSurface):
        infinite.value_infinite(MovingFrameState(0.4, 0.4, -1.0), make_params(0.6, 0.35))


def test_degenerate_slope():
    p = make_params(0.6, 0.35)
    with pytest.raises(DegenerateSlope):
        infinite.slope_m(p, UnitHeading(1.0, 0.0), 0.25)


@given(valid_params(), st.sampled_from([AHEAD, BEHIND]))
def test_heading_unit_and_slope_matches_m1(p, side):
    h = infinite.equilibrium_heading_infinite(p, side)
    assert math.hypot(h.c, h.s) == pytest.approx(1.0, abs=1e-12)
    assert h.s > 0
    m = infinite.slope_m(p, h, infinite.equilibrium_defender(side))
    assert m == pytest.approx(infinite.m1(p, side), rel=1e-9)


@given(valid_params(), st.sampled_from([AHEAD, BEHIND]))
def test_closed_form_velocity_is_forward_velocity(p, side):
    h = infinite.equilibrium_heading_infinite(p, side)
    vx, vy = infinite.equilibrium_velocity(p, side)
    assert vx == pytest.approx(p.v_A * h.c - p.v_T, abs=1e-12)
    assert vy == pytest.approx(p.v_A * h.s, abs=1e-12)

"""Equilibrium play against a target of finite length ``L``.

The defender's strategy does not depend on ``L``.  The attacker keeps the
infinite-target heading when its moving-frame ray lands on ``[0, L]``;
otherwise it aims at the endpoint closest to that landing point, resolving
its moving-frame speed from the law of cosines.  The Value is the signed
X-intercept of the resulting straight relative path in both cases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateGeometry
from .game import EPS_CAPTURE, GameParams, MovingFrameState, Side, UnitHeading, mirror, side_of
from .infinite import EquilibriumDecision, Regime, _heading_infinite, _slope, value_infinite


@dataclass(frozen=True)
class AimPoint:
    """Where the infinite-form heading meets the target line.

    ``m_B`` is the slope of the inertial heading (``tan phi``); ``x_B`` is
    the moving-frame landing point, which accounts for the target's drift
    during the approach (``dx_dy`` is the run per unit rise in that frame).
    """

    x_B: float
    m_B: float
    dx_dy: float


@dataclass(frozen=True)
class EndpointGeometry:
    x_E: float
    d_EA: float
    c_hat: float
    s_hat: float
    v_hat: float


def _aim_x(x_A, y_A, v_A, c, s, v_T):
    return x_A - y_A * (v_A * c - v_T) / (v_A * s)


def aim_point(state: MovingFrameState, params: GameParams, side: Side | None = None) -> AimPoint:
    if side is None:
        side = side_of(state)
    lam = int(side)
    v_A, v_T = params.v_A, params.v_T
    c, s = _heading_infinite(v_A, v_T, lam)
    rho = 1.0 + lam * v_T
    m_B = math.sqrt(rho * rho - v_A * v_A) / (lam * v_A)
    dx_dy = (v_A * c - v_T) / (v_A * s)
    return AimPoint(state.x_A - state.y_A * dx_dy, m_B, dx_dy)


def infinite_form_valid(aim: AimPoint, L: float) -> bool:
    return 0.0 <= aim.x_B <= L


def _moving_speed(v_A, v_T, c_hat, s_hat):
    # positive root of v_A^2 = v_T^2 + v^2 + 2 v_T v c_hat
    return -v_T * c_hat + math.sqrt(v_A * v_A - (v_T * s_hat) ** 2)


def _aim_heading(x_A, y_A, p, v_A, v_T):
    """Inertial heading that carries the attacker straight to ``(p, 0)``."""
    dx = p - x_A
    d = math.hypot(dx, y_A)
    if d < 1e-12:
        raise DegenerateGeometry(f"attacker is {d:.3g} from the aim point")
    c_hat, s_hat = dx / d, -y_A / d
    v = _moving_speed(v_A, v_T, c_hat, s_hat)
    return (v * c_hat + v_T) / v_A, v * s_hat / v_A, d, c_hat, s_hat, v


def endpoint_heading(state: MovingFrameState, params: GameParams, side: Side | None = None,
                     x_E: float | None = None) -> EndpointGeometry:
    """Moving-frame geometry of a straight run at an endpoint of the target.

    Without ``x_E`` the endpoint nearest the infinite-form landing point is
    used (for the usual case that is ``0`` when the defender is ahead and
    ``L`` when the attacker is ahead).
    """
    if x_E is None:
        x_E = _nearest_endpoint(aim_point(state, params, side).x_B, params.L)
    _, _, d, c_hat, s_hat, v = _aim_heading(state.x_A, state.y_A, x_E, params.v_A, params.v_T)
    return EndpointGeometry(x_E, d, c_hat, s_hat, v)


def _nearest_endpoint(x_B, L):
    return 0.0 if x_B < 0.0 else L


def equilibrium_controls(x_D, x_A, y_A, v_A, v_T, L):
    """Scalar fast path: ``(cos_phi, sin_phi, w, regime)`` for a canonical state.

    Caller guarantees ``y_A <= 0`` and ``|x_A - x_D| >= EPS_CAPTURE``.
    """
    lam = 1 if x_A > x_D else -1
    c, s = _heading_infinite(v_A, v_T, lam)
    if L == math.inf:
        return c, s, lam, Regime.INFINITE_FORM
    x_B = _aim_x(x_A, y_A, v_A, c, s, v_T)
    if 0.0 <= x_B <= L:
        return c, s, lam, Regime.INFINITE_FORM
    c, s, *_ = _aim_heading(x_A, y_A, _nearest_endpoint(x_B, L), v_A, v_T)
    return c, s, lam, Regime.ENDPOINT_AIM


def _value(X, Y, x_A, c, s, w, lam, v_A, v_T, L):
    if Y != 0.0:
        return lam * (X - Y / _slope(v_A, v_T, c, s, w))
    if 0.0 <= x_A <= L:
        return lam * X
    # on the target line but beside the segment: finish along the axis
    x_E = 0.0 if x_A < 0.0 else L
    t_f = abs(x_E - x_A) / abs(v_A * c - v_T)
    return lam * (X + (v_A * c - v_T - w) * t_f)


def equilibrium_decision_finite(state: MovingFrameState, params: GameParams,
                                eps_capture: float = EPS_CAPTURE) -> EquilibriumDecision:
    """Finite-target decision for a state in canonical orientation."""
    if not params.finite:
        return value_infinite(state, params, eps_capture)
    side = side_of(state, eps_capture)
    c, s, w, regime = equilibrium_controls(state.x_D, state.x_A, state.y_A,
                                           params.v_A, params.v_T, params.L)
    X = state.x_A - state.x_D
    m = _slope(params.v_A, params.v_T, c, s, w)
    V = _value(X, state.y_A, state.x_A, c, s, w, w, params.v_A, params.v_T, params.L)
    return EquilibriumDecision(UnitHeading(c, s), w, m, V, regime, side)


def solve(state: MovingFrameState, params: GameParams,
          eps_capture: float = EPS_CAPTURE) -> EquilibriumDecision:
    """Equilibrium decision for any state; attackers above the target are mirrored."""
    canon, flipped = mirror(state)
    d = equilibrium_decision_finite(canon, params, eps_capture)
    if not flipped:
        return d
    return EquilibriumDecision(d.heading.mirrored(), d.w_D, -d.m, d.value, d.regime, d.side, True)


def value(state: MovingFrameState, params: GameParams, eps_capture: float = EPS_CAPTURE) -> float:
    return solve(state, params, eps_capture).value

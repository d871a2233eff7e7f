"""Equilibrium strategies and Value when the target spans the whole x-axis.

With ``lam = sign(X)`` and ``rho = 1 + lam*v_T`` the adjoints are the
constants ``(-lam, lam, eta)`` with ``eta = sqrt(rho**2 - v_A**2) / v_A``.
The attacker's inertial heading is ``(lam*v_A, sqrt(rho**2 - v_A**2)) / rho``
and the defender drives toward the attacker at full speed, ``w = lam``.
Under these controls the relative position ``(X, Y)`` moves along a
straight line and the Value is the signed X-intercept of that line.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateSlope
from .game import EPS_CAPTURE, GameParams, MovingFrameState, Side, UnitHeading, side_of


class Regime(str, enum.Enum):
    INFINITE_FORM = "InfiniteForm"
    ENDPOINT_AIM = "EndpointAim"


@dataclass(frozen=True)
class InfiniteCoefficients:
    lam: int
    rho: float
    alpha: float
    beta: float
    eta: float


@dataclass(frozen=True)
class AdjointVector:
    sigma_xD: float
    sigma_xA: float
    sigma_yA: float


@dataclass(frozen=True)
class EquilibriumDecision:
    heading: UnitHeading
    w_D: int
    m: float
    value: float
    regime: Regime
    side: Side
    mirrored: bool = False

    def to_dict(self):
        return {
            "regime": self.regime.value,
            "side": self.side.name,
            "heading": {"cos_phi": self.heading.c, "sin_phi": self.heading.s,
                        "phi": self.heading.angle},
            "w_D": self.w_D,
            "m": self.m,
            "V": self.value,
            "mirrored": self.mirrored,
        }


def coefficients(params: GameParams, side: Side) -> InfiniteCoefficients:
    lam = int(side)
    rho = 1.0 + lam * params.v_T
    return InfiniteCoefficients(lam, rho, params.alpha, params.beta, eta(params, side))


def eta(params: GameParams, side: Side) -> float:
    rho = 1.0 + int(side) * params.v_T
    return math.sqrt(rho * rho - params.v_A * params.v_A) / params.v_A


def adjoints(params: GameParams, side: Side) -> AdjointVector:
    lam = float(int(side))
    return AdjointVector(-lam, lam, eta(params, side))


def _heading_infinite(v_A, v_T, lam):
    rho = 1.0 + lam * v_T
    return lam * v_A / rho, math.sqrt(rho * rho - v_A * v_A) / rho


def equilibrium_heading_infinite(params: GameParams, side: Side) -> UnitHeading:
    c, s = _heading_infinite(params.v_A, params.v_T, int(side))
    return UnitHeading(c, s)


def equilibrium_defender(side: Side) -> int:
    return int(side)


def _slope(v_A, v_T, c, s, w):
    den = v_A * c - w - v_T
    if abs(den) < 1e-12:
        raise DegenerateSlope(f"relative x-velocity {den:.3g} vanishes")
    return v_A * s / den


def slope_m(params: GameParams, heading: UnitHeading, w_D: float) -> float:
    """Slope dY/dX of the relative path under constant controls."""
    return _slope(params.v_A, params.v_T, heading.c, heading.s, w_D)


def m1(params: GameParams, side: Side) -> float:
    """Equilibrium relative-path slope written directly in the speeds."""
    lam = int(side)
    rho = 1.0 + lam * params.v_T
    v_A = params.v_A
    return v_A * math.sqrt(rho * rho - v_A * v_A) / (lam * v_A * v_A - rho * (lam + params.v_T))


def equilibrium_velocity(params: GameParams, side: Side):
    """Moving-frame attacker velocity along equilibrium play, in closed form."""
    lam = int(side)
    rho = 1.0 + lam * params.v_T
    v_A = params.v_A
    return (-params.v_T + lam * v_A * v_A / rho,
            v_A * math.sqrt(1.0 - (v_A / rho) ** 2))


def _intercept_value(X, Y, m, lam):
    # signed X-intercept of the relative line through (X, Y), seen from side lam
    if Y == 0.0:
        return lam * X
    return lam * (X - Y / m)


def value_infinite(state: MovingFrameState, params: GameParams,
                   eps_capture: float = EPS_CAPTURE) -> EquilibriumDecision:
    """Infinite-target decision for a state in canonical orientation (``y_A <= 0``).

    The Value is reported as-is when negative; it then measures how far the
    state lies inside the defender's winning region.
    """
    side = side_of(state, eps_capture)
    lam = int(side)
    c, s = _heading_infinite(params.v_A, params.v_T, lam)
    m = _slope(params.v_A, params.v_T, c, s, lam)
    V = _intercept_value(state.x_A - state.x_D, state.y_A, m, lam)
    return EquilibriumDecision(UnitHeading(c, s), lam, m, V, Regime.INFINITE_FORM, side)


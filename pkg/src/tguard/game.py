"""Domain types and frame geometry for the moving-target guarding game.

All solving happens in the frame attached to the target's left endpoint.
The target is the segment ``[0, L]`` of the x-axis of that frame and
translates with speed ``v_T`` along the inertial +x direction.  The
defender's speed is normalised to 1 relative to the target.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AtCaptureSurface, InconsistentState, InvalidParams

INFINITE = math.inf

# |X| below this counts as capture; sign(X) is never evaluated there.
EPS_CAPTURE = 1e-9


@dataclass(frozen=True)
class GameParams:
    v_A: float
    v_T: float
    L: float = INFINITE

    @property
    def finite(self) -> bool:
        return math.isfinite(self.L)

    @property
    def alpha(self) -> float:
        return 1.0 + self.v_T

    @property
    def beta(self) -> float:
        return 1.0 - self.v_T


def make_params(v_A: float, v_T: float, L: float = INFINITE) -> GameParams:
    """Validate speeds and length.

    Raises :class:`InvalidParams` tagged with the violated assumption:
    ``A1`` (attacker faster than target), ``A2`` (defender can outrun the
    attacker along the target: ``v_A < 1 - v_T``), ``speed`` or ``length``.
    """
    v_A, v_T, L = float(v_A), float(v_T), float(L)
    if not (math.isfinite(v_A) and math.isfinite(v_T)) or v_A <= 0 or v_T <= 0:
        raise InvalidParams("speed", f"speeds must be positive and finite, got v_A={v_A}, v_T={v_T}")
    if not v_A > v_T:
        raise InvalidParams("A1", f"need v_A > v_T, got v_A={v_A}, v_T={v_T}")
    if not v_A < 1.0 - v_T:
        raise InvalidParams("A2", f"need v_A < 1 - v_T, got v_A={v_A}, 1 - v_T={1.0 - v_T}")
    if math.isnan(L) or L <= 0:
        raise InvalidParams("length", f"target length must be positive, got L={L}")
    return GameParams(v_A, v_T, L)


def static_params(v_A: float, L: float = INFINITE) -> GameParams:
    """Parameters for a stationary target (``v_T = 0``).

    ``make_params`` rejects ``v_T = 0`` as a non-positive speed; the static
    target is still a well-posed limit of the game and is used for symmetry
    checks, so it gets its own constructor.
    """
    v_A, L = float(v_A), float(L)
    if not 0 < v_A < 1:
        raise InvalidParams("A2", f"static target needs 0 < v_A < 1, got {v_A}")
    if math.isnan(L) or L <= 0:
        raise InvalidParams("length", f"target length must be positive, got L={L}")
    return GameParams(v_A, 0.0, L)


@dataclass(frozen=True)
class RelativeState:
    X: float
    Y: float


@dataclass(frozen=True)
class MovingFrameState:
    x_D: float
    x_A: float
    y_A: float

    @property
    def X(self) -> float:
        return self.x_A - self.x_D

    @property
    def Y(self) -> float:
        return self.y_A

    def relative(self) -> RelativeState:
        return RelativeState(self.x_A - self.x_D, self.y_A)

    def as_tuple(self):
        return (self.x_D, self.x_A, self.y_A)


class Side(enum.IntEnum):
    """Which player is further along +x; the value is ``lambda = sign(X)``."""

    ATTACKER_AHEAD = 1
    DEFENDER_AHEAD = -1

    @property
    def lam(self) -> int:
        return int(self)


@dataclass(frozen=True)
class UnitHeading:
    """Inertial-frame attacker heading as a (cos, sin) pair."""

    c: float
    s: float

    @classmethod
    def from_angle(cls, phi: float) -> "UnitHeading":
        return cls(math.cos(phi), math.sin(phi))

    @property
    def angle(self) -> float:
        return math.atan2(self.s, self.c)

    def mirrored(self) -> "UnitHeading":
        return UnitHeading(self.c, -self.s)


def to_moving_frame(defender, attacker, target) -> MovingFrameState:
    """Shift inertial ``(x, y)`` positions into the target frame.

    ``target`` is the inertial position of the target's left endpoint.
    """
    x_T, y_T = target
    if abs(defender[1] - y_T) > 1e-9:
        raise InconsistentState(
            f"defender y={defender[1]} is off the target line y={y_T}")
    return MovingFrameState(defender[0] - x_T, attacker[0] - x_T, attacker[1] - y_T)


def from_moving_frame(state: MovingFrameState, target):
    """Inverse of :func:`to_moving_frame`; returns (defender, attacker) positions."""
    x_T, y_T = target
    return (state.x_D + x_T, y_T), (state.x_A + x_T, state.y_A + y_T)


def side_of(state: MovingFrameState, eps_capture: float = EPS_CAPTURE) -> Side:
    X = state.x_A - state.x_D
    if abs(X) < eps_capture:
        raise AtCaptureSurface(f"|X| = {abs(X):.3g} is on the capture surface")
    return Side.ATTACKER_AHEAD if X > 0 else Side.DEFENDER_AHEAD


def mirror(state: MovingFrameState):
    """Reflect an attacker above the target to the canonical lower half.

    Returns ``(state, was_mirrored)``.  Headings computed on the reflected
    state must have their ``s`` component negated before being applied to
    the original one.
    """
    if state.y_A > 0:
        return MovingFrameState(state.x_D, state.x_A, -state.y_A), True
    return state, False

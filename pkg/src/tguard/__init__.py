"""Guarding a translating line-segment target against a faster attacker."""
from .errors import (AtCaptureSurface, DegenerateGeometry, DegenerateSlope, GuardError,
                     InconsistentState, InvalidParams, NoBarrier)  # noqa: F401
from .finite import solve, value  # noqa: F401
from .game import GameParams, MovingFrameState, Side, UnitHeading, make_params, static_params  # noqa: F401
from .infinite import EquilibriumDecision, Regime, value_infinite  # noqa: F401
from .simulate import Outcome, OutcomeKind, SimConfig, StrategyPair  # noqa: F401

__version__ = "0.1.0"

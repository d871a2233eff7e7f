"""Closed-loop simulation of the game in the moving frame.

Strategies are sampled-data state feedback: each is evaluated once per
step and held over it.  Integration is classical RK4 at a fixed step, and
terminal events (breach of the target line, capture) are located by
bisection inside the step that brackets them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import finite
from .errors import AtCaptureSurface
from .game import EPS_CAPTURE, GameParams, MovingFrameState
from .io import write_csv


class TargetMode(str, enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"


class OutcomeKind(str, enum.Enum):
    BREACH = "breach"
    CAPTURE = "capture"
    OFF_TARGET = "offtarget"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-3
    max_time: float = 100.0
    event_tol: float = 1e-9
    target_mode: TargetMode | None = None   # None: follow params.finite
    record: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.event_tol < self.dt:
            raise ValueError("event_tol must be smaller than dt")
        if not self.max_time > 0:
            raise ValueError("max_time must be positive")


@dataclass
class Outcome:
    kind: OutcomeKind
    t_f: float
    x_D: float
    x_A: float
    y_A: float
    miss: float | None = None
    trajectory: list = field(default_factory=list, repr=False)
    mirrored: bool = False

    @property
    def attacker_won(self) -> bool:
        return self.kind is OutcomeKind.BREACH and self.miss > 0


def payoff(outcome: Outcome):
    """Miss distance on a breach, ``None`` when the payoff is undefined."""
    if outcome.kind is OutcomeKind.BREACH:
        return outcome.miss
    return None


# -- strategies -------------------------------------------------------------
# Attacker strategies map (t, x_D, x_A, y_A) -> (cos_phi, sin_phi); defender
# strategies map the same arguments to w.  Both see the caller's orientation.

class EquilibriumAttacker:
    def __init__(self, params: GameParams):
        self.v_A, self.v_T, self.L = params.v_A, params.v_T, params.L

    def __call__(self, t, x_D, x_A, y_A):
        if y_A > 0:
            c, s, _, _ = finite.equilibrium_controls(x_D, x_A, -y_A, self.v_A, self.v_T, self.L)
            return c, -s
        c, s, _, _ = finite.equilibrium_controls(x_D, x_A, y_A, self.v_A, self.v_T, self.L)
        return c, s


class EquilibriumDefender:
    def __call__(self, t, x_D, x_A, y_A):
        return 1.0 if x_A > x_D else -1.0


class ConstantHeading:
    def __init__(self, phi: float):
        self.phi = phi
        self._cs = (math.cos(phi), math.sin(phi))

    def __call__(self, t, x_D, x_A, y_A):
        return self._cs


class AimAt:
    """Straight moving-frame run at the target-line point ``(p, 0)``."""

    def __init__(self, p: float, params: GameParams):
        self.p, self.v_A, self.v_T = p, params.v_A, params.v_T

    def __call__(self, t, x_D, x_A, y_A):
        if y_A > 0:
            c, s, *_ = finite._aim_heading(x_A, -y_A, self.p, self.v_A, self.v_T)
            return c, -s
        c, s, *_ = finite._aim_heading(x_A, y_A, self.p, self.v_A, self.v_T)
        return c, s


class RotatedHeading:
    """Another attacker strategy with its heading rotated by ``delta`` radians."""

    def __init__(self, base, delta: float):
        self.base, self.delta = base, delta
        self._cd, self._sd = math.cos(delta), math.sin(delta)

    def __call__(self, t, x_D, x_A, y_A):
        c, s = self.base(t, x_D, x_A, y_A)
        return c * self._cd - s * self._sd, s * self._cd + c * self._sd


class ConstantW:
    def __init__(self, w: float):
        self.w = w

    def __call__(self, t, x_D, x_A, y_A):
        return self.w


class DelayedSwitch:
    """Defender that plays ``first`` until ``delay`` and ``then`` afterwards."""

    def __init__(self, first, delay: float, then):
        self.first, self.delay, self.then = first, delay, then

    def __call__(self, t, x_D, x_A, y_A):
        if t < self.delay:
            return self.first(t, x_D, x_A, y_A)
        return self.then(t, x_D, x_A, y_A)


@dataclass
class StrategyPair:
    attacker: object
    defender: object

    @classmethod
    def equilibrium(cls, params: GameParams) -> "StrategyPair":
        return cls(EquilibriumAttacker(params), EquilibriumDefender())


# -- integration ------------------------------------------------------------

def _step(x_D, x_A, y_A, vx, vy, w, h, lo, hi):
    """RK4 step under held controls; the defender rate is clamped at [lo, hi]."""
    def rate(xd):
        if (xd >= hi and w > 0) or (xd <= lo and w < 0):
            return 0.0
        return w

    k1 = rate(x_D)
    k2 = rate(x_D + 0.5 * h * k1)
    k3 = rate(x_D + 0.5 * h * k2)
    k4 = rate(x_D + h * k3)
    x_D = x_D + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if x_D > hi:
        x_D = hi
    elif x_D < lo:
        x_D = lo
    # the attacker's rates do not depend on the state while controls are held,
    # so its four RK4 stages coincide
    return x_D, x_A + h * vx, y_A + h * vy


def _bisect(pred, h, tol):
    lo, hi = 0.0, h
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def simulate(state0: MovingFrameState, params: GameParams, strategies: StrategyPair | None = None,
             config: SimConfig | None = None, eps_capture: float = EPS_CAPTURE) -> Outcome:
    """Integrate the closed loop from ``state0`` until the first terminal event.

    States with the attacker above the target are mirrored and simulated in
    canonical orientation; strategies and the recorded trajectory use the
    caller's orientation throughout.  A breach and a capture located within
    ``event_tol`` of each other count as a capture.
    """
    cfg = config or SimConfig()
    strat = strategies or StrategyPair.equilibrium(params)
    mode = cfg.target_mode or (TargetMode.FINITE if params.finite else TargetMode.INFINITE)
    if mode is TargetMode.FINITE:
        if not params.finite:
            raise ValueError("finite target mode needs a finite L")
        lo, hi = 0.0, params.L
    else:
        lo, hi = -math.inf, math.inf

    flipped = state0.y_A > 0
    sign = -1.0 if flipped else 1.0
    x_D, x_A, y_A = state0.x_D, state0.x_A, sign * state0.y_A
    if mode is TargetMode.FINITE:
        x_D = min(max(x_D, lo), hi)
    v_A, v_T = params.v_A, params.v_T
    att, dfd = strat.attacker, strat.defender
    dt, tol, t_max = cfg.dt, cfg.event_tol, cfg.max_time
    traj = [] if cfg.record else None

    def finish(kind, t, xd, xa, ya, c=math.nan, s=math.nan, w=math.nan):
        miss = abs(xa - xd) if kind is OutcomeKind.BREACH else None
        if traj is not None:
            traj.append((t, xd, xa, sign * ya, w, c, sign * s, kind.value))
        return Outcome(kind, t, xd, xa, sign * ya, miss, traj or [], flipped)

    # bisection stops within event_tol in time and every speed is below 2
    slack = 2.0 * tol

    def on_target(xa):
        return lo - slack <= xa <= hi + slack if mode is TargetMode.FINITE else True

    X = x_A - x_D
    if abs(X) < eps_capture:
        return finish(OutcomeKind.CAPTURE, 0.0, x_D, x_A, y_A)
    if y_A == 0.0 and on_target(x_A):
        return finish(OutcomeKind.BREACH, 0.0, x_D, x_A, y_A)

    t = 0.0
    while True:
        c, s = att(t, x_D, x_A, sign * y_A)
        s = sign * s
        w = dfd(t, x_D, x_A, sign * y_A)
        w = 1.0 if w > 1.0 else (-1.0 if w < -1.0 else float(w))
        if t >= t_max:
            return finish(OutcomeKind.TRUNCATED, t, x_D, x_A, y_A, c, s, w)
        if traj is not None:
            traj.append((t, x_D, x_A, sign * y_A, w, c, sign * s, ""))

        h = min(dt, t_max - t)
        vx, vy = v_A * c - v_T, v_A * s
        nd, na, ny = _step(x_D, x_A, y_A, vx, vy, w, h, lo, hi)

        side = 1.0 if x_A > x_D else -1.0
        y_started_on_axis = y_A >= 0.0
        hit_c = side * (na - nd) <= eps_capture
        if y_started_on_axis:
            hit_y = ny > 0.0 or on_target(na)
        else:
            hit_y = ny >= 0.0
        if hit_c or hit_y:
            start = (x_D, x_A, y_A)

            def captured(tau):
                d, a, _ = _step(*start, vx, vy, w, tau, lo, hi)
                return side * (a - d) <= eps_capture

            def crossed(tau):
                _, a, yy = _step(*start, vx, vy, w, tau, lo, hi)
                if y_started_on_axis:
                    return yy > 0.0 or on_target(a)
                return yy >= 0.0

            tau_c = _bisect(captured, h, tol) if hit_c else math.inf
            tau_y = _bisect(crossed, h, tol) if hit_y else math.inf
            if tau_c <= tau_y + tol:
                d, a, yy = _step(*start, vx, vy, w, tau_c, lo, hi)
                return finish(OutcomeKind.CAPTURE, t + tau_c, d, a, yy, c, s, w)
            d, a, yy = _step(*start, vx, vy, w, tau_y, lo, hi)
            kind = OutcomeKind.BREACH if on_target(a) else OutcomeKind.OFF_TARGET
            return finish(kind, t + tau_y, d, a, yy, c, s, w)

        x_D, x_A, y_A = nd, na, ny
        t = t + h


def simulate_equilibrium(state0: MovingFrameState, params: GameParams, dt: float = 1e-3,
                         record: bool = False, **kw) -> Outcome:
    return simulate(state0, params, StrategyPair.equilibrium(params),
                    SimConfig(dt=dt, record=record, **kw))


def flow_field(params: GameParams, seeds, dt: float = 1e-3, max_time: float = 100.0):
    """Equilibrium relative paths ``[(X, Y), ...]`` for infinite-target play.

    ``seeds`` are initial relative positions ``(X, Y)`` with ``Y < 0``.
    """
    inf_params = GameParams(params.v_A, params.v_T, math.inf)
    cfg = SimConfig(dt=dt, max_time=max_time, target_mode=TargetMode.INFINITE)
    lines = []
    for X, Y in seeds:
        if abs(X) < EPS_CAPTURE:
            raise AtCaptureSurface(f"flow-field seed X={X} lies on the capture surface")
        out = simulate(MovingFrameState(0.0, X, Y), inf_params, config=cfg)
        lines.append(([(r[2] - r[1], r[3]) for r in out.trajectory], out.kind))
    return lines


TRAJECTORY_HEADER = ("t", "x_D", "x_A", "y_A", "w", "cos_phi", "sin_phi", "event")


def write_trajectory_csv(outcome: Outcome, path) -> None:
    write_csv(path, TRAJECTORY_HEADER, outcome.trajectory)

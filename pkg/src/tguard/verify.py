"""Numerical certificates for the equilibrium solution.

Each suite returns a :class:`VerificationReport` whose ``passed`` flag is
true exactly when every case is inside its tolerance.  Random cases are
drawn from ``numpy.random.default_rng(seed)`` and the seed is recorded.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import barrier, finite, infinite, simulate as sim
from .game import GameParams, MovingFrameState, Side, UnitHeading, make_params, static_params
from .infinite import AdjointVector


@dataclass
class VerificationReport:
    suite: str
    seed: int | None
    tolerances: dict
    cases: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cases)

    def add(self, ok, **record):
        record["pass"] = bool(ok)
        self.cases.append(record)

    def failures(self):
        return [c for c in self.cases if not c["pass"]]

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        d["n_cases"] = len(self.cases)
        d["n_failed"] = len(self.failures())
        return d


# -- primitives -------------------------------------------------------------

def hamiltonian(params: GameParams, adj: AdjointVector, w: float, heading: UnitHeading) -> float:
    return (adj.sigma_xD * w + adj.sigma_xA * (params.v_A * heading.c - params.v_T)
            + adj.sigma_yA * params.v_A * heading.s)


def eta_root(params: GameParams, side: Side) -> float:
    """Positive root of the terminal Hamiltonian condition, found numerically."""
    lam, v_A, v_T = int(side), params.v_A, params.v_T

    def h_terminal(e):
        r = math.sqrt(e * e + 1.0)
        return -lam * lam + lam * v_A * (lam / r) - lam * v_T + e * v_A * (e / r)

    hi = 1.0
    while h_terminal(hi) < 0:
        hi *= 2.0
    return brentq(h_terminal, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def isaacs_check(params: GameParams, side: Side, heading_grid_n: int = 721, w_grid_n: int = 201) -> dict:
    """Grid minimax / maximin of the Hamiltonian with the equilibrium adjoints."""
    adj = infinite.adjoints(params, side)
    phi = np.linspace(-math.pi, math.pi, heading_grid_n)
    w = np.linspace(-1.0, 1.0, w_grid_n)
    h_att = adj.sigma_xA * (params.v_A * np.cos(phi) - params.v_T) + adj.sigma_yA * params.v_A * np.sin(phi)
    H = adj.sigma_xD * w[:, None] + h_att[None, :]
    minmax = float(H.max(axis=1).min())
    maxmin = float(H.min(axis=0).max())
    sep = float(np.max(np.abs((H - H[:, :1]) - (H[:1, :] - H[:1, :1]))))
    bound = math.pi / heading_grid_n * params.v_A + 2.0 / w_grid_n
    return {"minmax": minmax, "maxmin": maxmin, "gap": abs(minmax - maxmin),
            "bound": bound, "separability": sep,
            "ok": abs(minmax - maxmin) <= bound and abs(minmax) <= bound and abs(maxmin) <= bound}


def _oracle_margins(state, params, aim_grid_n, signed):
    p = np.linspace(0.0, params.L, aim_grid_n)
    dx = p - state.x_A
    dy = -state.y_A
    d = np.hypot(dx, dy)
    with np.errstate(invalid="ignore", divide="ignore"):
        ch = dx / d
        # moving-frame speed: positive root of v^2 + 2 v_T ch v + (v_T^2 - v_A^2) = 0
        b = 2.0 * params.v_T * ch
        disc = b * b - 4.0 * (params.v_T ** 2 - params.v_A ** 2)
        v = 0.5 * (-b + np.sqrt(disc))
        t_A = np.where(d > 0, d / v, 0.0)
    if signed:
        lam = 1.0 if state.x_A > state.x_D else -1.0
        gap = lam * (p - state.x_D)
    else:
        gap = np.abs(p - state.x_D)
    return p, gap - t_A


def oracle_search(state: MovingFrameState, params: GameParams, aim_grid_n: int = 4001, signed: bool = True):
    """Brute-force best straight-line aim point; returns ``(margin, p)``.

    The attacker runs straight at ``(p, 0)`` in the moving frame, the
    defender runs at full speed toward the attacker's side, and the margin
    is how far short of the aim point the defender ends up.  Never calls
    the closed-form Value.
    """
    if state.y_A > 0:
        state = MovingFrameState(state.x_D, state.x_A, -state.y_A)
    p, margin = _oracle_margins(state, params, aim_grid_n, signed)
    k = int(np.argmax(margin))
    return float(margin[k]), float(p[k])


def oracle_value(state: MovingFrameState, params: GameParams, aim_grid_n: int = 4001,
                 signed: bool = True) -> float:
    return oracle_search(state, params, aim_grid_n, signed)[0]


# -- random draws -----------------------------------------------------------

def random_params(rng, L=1.0, margin=0.03):
    v_T = rng.uniform(0.05, 0.4)
    v_A = rng.uniform(v_T + margin, 1.0 - v_T - margin)
    return make_params(v_A, v_T, L)


def random_state(rng, params, ylim=(-1.0, -0.02)):
    while True:
        x_D = rng.uniform(0.0, params.L if params.finite else 1.0)
        s = MovingFrameState(x_D, rng.uniform(-0.5, 1.5),
                             rng.uniform(*ylim))
        if abs(s.X) > 1e-3:
            return s


def random_cases(rng, n, accept, ylim=(-1.0, -0.02)):
    out = []
    while len(out) < n:
        params = random_params(rng)
        state = random_state(rng, params, ylim)
        V = finite.value(state, params)
        if accept(V):
            out.append((state, params, V))
    return out


def _case(state, params):
    return {"state": [state.x_D, state.x_A, state.y_A], "params": [params.v_A, params.v_T, params.L]}


# -- suites -----------------------------------------------------------------

def suite_hamiltonian(seed=None, n=50) -> VerificationReport:
    rep = VerificationReport("hamiltonian", seed, {"abs_H": 1e-12})
    for v_T in np.linspace(0.0, 0.5, n + 2)[1:-1]:
        for u in np.linspace(0.0, 1.0, n + 2)[1:-1]:
            params = make_params(v_T + u * (1.0 - 2.0 * v_T), v_T)
            for side in Side:
                H = hamiltonian(params, infinite.adjoints(params, side), infinite.equilibrium_defender(side),
                                infinite.equilibrium_heading_infinite(params, side))
                rep.add(abs(H) <= 1e-12, params=[params.v_A, params.v_T], side=side.name, H=H)
    rep.summary["max_abs_H"] = max(abs(c["H"]) for c in rep.cases)
    return rep


def suite_eta(seed=None, n=50) -> VerificationReport:
    rep = VerificationReport("eta", seed, {"abs_err": 1e-12})
    for v_T in np.linspace(0.0, 0.5, n + 2)[1:-1]:
        for u in np.linspace(0.0, 1.0, 12)[1:-1]:
            params = make_params(v_T + u * (1.0 - 2.0 * v_T), v_T)
            for side in Side:
                closed, root = infinite.eta(params, side), eta_root(params, side)
                rep.add(abs(closed - root) <= 1e-12 * max(1.0, closed), params=[params.v_A, params.v_T],
                        side=side.name, closed=closed, root=root)
    return rep


def suite_isaacs(seed=0, n=20, heading_grid_n=721, w_grid_n=201) -> VerificationReport:
    rng = np.random.default_rng(seed)
    rep = VerificationReport("isaacs", seed, {"heading_grid_n": heading_grid_n, "w_grid_n": w_grid_n})
    for _ in range(n):
        params = random_params(rng, L=math.inf)
        for side in Side:
            r = isaacs_check(params, side, heading_grid_n, w_grid_n)
            ok = r.pop("ok") and r["separability"] <= 1e-15
            rep.add(ok, params=[params.v_A, params.v_T], side=side.name, **r)
    return rep


def suite_oracle(seed=1, n=100, aim_grid_n=4001, tol=2e-3) -> VerificationReport:
    """Closed-form finite Value against the brute-force aim-point oracle.

    Half the states are attacker wins and half defender wins.  The unsigned
    margin variant is evaluated alongside and its disagreements counted.
    """
    rng = np.random.default_rng(seed)
    rep = VerificationReport("oracle", seed, {"abs_err": tol, "aim_grid_n": aim_grid_n})
    cases = random_cases(rng, n - n // 2, lambda V: V > 0) + random_cases(rng, n // 2, lambda V: V < 0)
    unsigned_bad = {"positive": 0, "negative": 0}
    worst = {"positive": 0.0, "negative": 0.0}
    for state, params, V in cases:
        o, p = oracle_search(state, params, aim_grid_n)
        u = oracle_value(state, params, aim_grid_n, signed=False)
        key = "positive" if V > 0 else "negative"
        worst[key] = max(worst[key], abs(o - V))
        if abs(u - V) > tol:
            unsigned_bad[key] += 1
        rep.add(abs(o - V) <= tol, **_case(state, params), V=V, oracle=o, p=p, unsigned=u)
    rep.summary.update(worst_error_by_sign=worst, unsigned_disagreements_by_sign=unsigned_bad)
    return rep


def _deviation_payoff(state, params, strategies, max_time, dt):
    out = sim.simulate(state, params, strategies, sim.SimConfig(dt=dt, max_time=max_time, record=False))
    return out.kind.value, sim.payoff(out)


def saddle_sample(state: MovingFrameState, params: GameParams, n_perturbations: int = 50,
                  seed: int = 7, dt: float = 1e-3, tol: float = 5e-3) -> VerificationReport:
    """Unilateral deviations from equilibrium, checked against the Value.

    Attacker deviations play against the equilibrium defender and must not
    earn more than ``V + tol``; a non-breach ending counts as no payoff.
    Defender deviations face the equilibrium attacker and must not hold the
    miss below ``V - tol``; a non-breach ending there is a violation.
    """
    rng = np.random.default_rng(seed)
    V = finite.value(state, params)
    rep = VerificationReport("saddle", seed, {"tol": tol, "dt": dt})
    eq_out = sim.simulate_equilibrium(state, params, dt=dt)
    t_eq = eq_out.t_f
    max_time = 10.0 * t_eq + 5.0
    phi0 = finite.solve(state, params).heading.angle
    base_att, base_def = sim.EquilibriumAttacker(params), sim.EquilibriumDefender()
    for k in range(n_perturbations):
        if k % 2 == 0:
            # keep the rotated heading pointed at the target line
            delta = float(rng.uniform(-0.5, 0.5))
            delta = min(max(phi0 + delta, 0.2), math.pi - 0.2) - phi0
            att, desc = sim.RotatedHeading(base_att, delta), f"rotate:{delta:.6f}"
        else:
            p = float(rng.uniform(0.0, params.L))
            att, desc = sim.AimAt(p, params), f"aim:{p:.6f}"
        kind, J = _deviation_payoff(state, params, sim.StrategyPair(att, base_def), max_time, dt)
        rep.add(J is None or J <= V + tol, player="attacker", deviation=desc, outcome=kind, J=J, V=V)
    for k in range(n_perturbations):
        r = k % 3
        if r == 0:
            w = float(rng.uniform(-1.0, 1.0))
            dfd, desc = sim.ConstantW(w), f"const:{w:.6f}"
        elif r == 1:
            dfd, desc = sim.ConstantW(-base_def(0.0, state.x_D, state.x_A, state.y_A)), "flip"
        else:
            w = float(rng.uniform(-1.0, 1.0))
            delay = float(rng.uniform(0.0, t_eq))
            dfd, desc = sim.DelayedSwitch(sim.ConstantW(w), delay, base_def), f"delay:{delay:.6f}:{w:.6f}"
        kind, J = _deviation_payoff(state, params, sim.StrategyPair(base_att, dfd), max_time, dt)
        rep.add(J is not None and J >= V - tol, player="defender", deviation=desc, outcome=kind, J=J, V=V)
    rep.summary.update(V=V, equilibrium_payoff=sim.payoff(eq_out), **_case(state, params))
    return rep


def suite_saddle(seed=7, n=50, n_states=20, dt=1e-3, tol=5e-3) -> VerificationReport:
    rng = np.random.default_rng(seed)
    rep = VerificationReport("saddle", seed, {"tol": tol, "dt": dt})
    cases = random_cases(rng, n_states, lambda V: V > 0.02, ylim=(-0.6, -0.02))
    for i, (state, params, _) in enumerate(cases):
        sub = saddle_sample(state, params, n, seed=seed * 1000 + i, dt=dt, tol=tol)
        for c in sub.cases:
            c.update(_case(state, params))
        rep.cases.extend(sub.cases)
    rep.summary["n_states"] = n_states
    return rep


def suite_adjoint(seed=3, n=20, dt=1e-3) -> VerificationReport:
    """Hamiltonian with the constant adjoints stays at zero along equilibrium play."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport("adjoint", seed, {"abs_H": 1e-10})
    for _ in range(n):
        params = random_params(rng, L=math.inf)
        state = random_state(rng, params)
        out = sim.simulate_equilibrium(state, params, dt=dt, record=True)
        worst = 0.0
        for t, x_D, x_A, y_A, w, c, s, _ in out.trajectory[:-1]:
            side = Side.ATTACKER_AHEAD if x_A > x_D else Side.DEFENDER_AHEAD
            H = hamiltonian(params, infinite.adjoints(params, side), w, UnitHeading(c, s))
            worst = max(worst, abs(H))
        rep.add(worst <= 1e-10, **_case(state, params), max_abs_H=worst, samples=len(out.trajectory))
    return rep


def suite_kinematics(seed=4, n=20, dt=1e-3) -> VerificationReport:
    """Simulated equilibrium velocities against the closed-form expressions."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport("kinematics", seed, {"abs_err": 1e-12})
    for _ in range(n):
        params = random_params(rng, L=math.inf)
        state = random_state(rng, params)
        out = sim.simulate_equilibrium(state, params, dt=dt, record=True)
        tr = out.trajectory[:-1]
        worst = 0.0
        for (t0, d0, a0, y0, *_), (t1, d1, a1, y1, *_) in zip(tr, tr[1:]):
            side = Side.ATTACKER_AHEAD if a0 > d0 else Side.DEFENDER_AHEAD
            vx, vy = infinite.equilibrium_velocity(params, side)
            worst = max(worst, abs((a1 - a0) / (t1 - t0) - vx), abs((y1 - y0) / (t1 - t0) - vy))
        rep.add(worst <= 1e-12, **_case(state, params), max_err=worst)
    return rep


def suite_classification(seed=5, n=500, dt=1e-3, min_abs_value=0.02) -> VerificationReport:
    """Region labels against simulated equilibrium outcomes."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport("classification", seed, {"min_abs_value": min_abs_value, "dt": dt})
    for state, params, V in random_cases(rng, n, lambda V: abs(V) > min_abs_value):
        label = barrier.classify(state, params)
        out = sim.simulate_equilibrium(state, params, dt=dt)
        if label is barrier.Region.ATTACKER_WIN:
            ok = out.attacker_won
        else:
            ok = out.kind is sim.OutcomeKind.CAPTURE
        rep.add(ok, **_case(state, params), V=V, region=label.value, outcome=out.kind.value, miss=out.miss)
    return rep


def suite_symmetry(seed=None, n=101, v_A=0.7) -> VerificationReport:
    """Static target centred on the defender: V(x, y) = V(1 - x, y)."""
    params = static_params(v_A, 1.0)
    rep = VerificationReport("symmetry", seed, {"abs_err": 1e-12})
    worst = 0.0
    count = 0
    for x in np.linspace(-0.5, 1.5, n):
        for y in np.linspace(-1.0, 0.0, n):
            x, y = float(x), float(y)
            if abs(x - 0.5) < 1e-9:
                continue
            a = finite.value(MovingFrameState(0.5, x, y), params)
            b = finite.value(MovingFrameState(0.5, 1.0 - x, y), params)
            worst = max(worst, abs(a - b))
            count += 1
    rep.add(worst <= 1e-12, max_abs_diff=worst, nodes=count)
    return rep


def _line_fit(points):
    x = np.array([p[0] for p in points])
    y = np.array([p[1] for p in points])
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(slope), float(np.max(np.abs(y - (slope * x + icpt))))


def suite_flowfield(seed=None, n=8, v_A=0.7, v_T=0.2, dt=1e-3) -> VerificationReport:
    """Equilibrium relative paths are straight with slope m1 on each side."""
    params = make_params(v_A, v_T)
    rep = VerificationReport("flowfield", seed, {"residual": 1e-8, "slope": 1e-6})
    xs = np.linspace(0.0, 1.0, n // 2 + 1)[1:]
    seeds = [(float(X), -0.5) for X in np.concatenate([-xs[::-1], xs])]
    for (X0, Y0), (line, kind) in zip(seeds, sim.flow_field(params, seeds, dt=dt)):
        side = Side.ATTACKER_AHEAD if X0 > 0 else Side.DEFENDER_AHEAD
        slope, resid = _line_fit(line)
        expect = infinite.m1(params, side)
        rep.add(resid <= 1e-8 and abs(slope - expect) <= 1e-6, seed_XY=[X0, Y0], slope=slope,
                m1=expect, residual=resid, outcome=kind.value)
    return rep


SUITES = {
    "hamiltonian": suite_hamiltonian,
    "eta": suite_eta,
    "isaacs": suite_isaacs,
    "oracle": suite_oracle,
    "saddle": suite_saddle,
    "adjoint": suite_adjoint,
    "kinematics": suite_kinematics,
    "classification": suite_classification,
    "symmetry": suite_symmetry,
    "flowfield": suite_flowfield,
}


def run_suite(name: str, seed=None, n=None) -> VerificationReport:
    fn = SUITES[name]
    kw = {}
    if seed is not None:
        kw["seed"] = seed
    if n is not None:
        kw["n"] = n
    return fn(**kw)

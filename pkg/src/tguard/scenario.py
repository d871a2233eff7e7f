"""Scenario JSON files consumed by the command line.

Example::

    {
      "params": {"v_A": 0.6, "v_T": 0.35, "L": 1.0},
      "state": {"x_D": 0.5, "x_A": 0.0, "y_A": 0.15},
      "sim": {"dt": 0.001, "max_time": 100, "event_tol": 1e-9},
      "strategy": {"attacker": "equilibrium", "defender": "const:0.5"}
    }

``L`` may be the string ``"infinite"``.  ``sim`` and ``strategy`` are optional.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import simulate as sim
from .errors import InvalidParams
from .game import GameParams, MovingFrameState, make_params, static_params


class ScenarioError(ValueError):
    def __init__(self, where, message):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Scenario:
    params: GameParams
    state: MovingFrameState
    sim: dict = field(default_factory=dict)
    attacker: str = "equilibrium"
    defender: str = "equilibrium"

    def sim_config(self, **override) -> sim.SimConfig:
        kw = dict(self.sim)
        kw.update({k: v for k, v in override.items() if v is not None})
        return sim.SimConfig(**kw)

    def strategies(self) -> sim.StrategyPair:
        return sim.StrategyPair(parse_attacker(self.attacker, self.params),
                                parse_defender(self.defender))


def _number(obj, key, where):
    if key not in obj:
        raise ScenarioError(f"{where}.{key}", "missing")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioError(f"{where}.{key}", f"expected a number, got {v!r}")
    return float(v)


def _object(obj, key, where, required=True):
    if key not in obj:
        if required:
            raise ScenarioError(f"{where}.{key}", "missing")
        return {}
    v = obj[key]
    if not isinstance(v, dict):
        raise ScenarioError(f"{where}.{key}", "expected an object")
    return v


def parse_length(v, where="params.L"):
    if isinstance(v, str) and v.lower() in ("inf", "infinite"):
        return math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioError(where, f"expected a number or \"infinite\", got {v!r}")
    return float(v)


def build_params(v_A, v_T, L, where="params"):
    try:
        if v_T == 0:
            return static_params(v_A, L)
        return make_params(v_A, v_T, L)
    except InvalidParams as exc:
        raise ScenarioError(where, str(exc)) from exc


def parse_attacker(spec: str, params: GameParams):
    if spec == "equilibrium":
        return sim.EquilibriumAttacker(params)
    kind, _, arg = spec.partition(":")
    try:
        x = float(arg)
    except ValueError:
        raise ScenarioError("strategy.attacker", f"bad strategy {spec!r}") from None
    if kind == "aim":
        return sim.AimAt(x, params)
    if kind == "heading":
        return sim.ConstantHeading(x)
    raise ScenarioError("strategy.attacker", f"unknown strategy {spec!r}")


def parse_defender(spec: str):
    if spec == "equilibrium":
        return sim.EquilibriumDefender()
    kind, _, arg = spec.partition(":")
    if kind == "const":
        try:
            return sim.ConstantW(float(arg))
        except ValueError:
            pass
    raise ScenarioError("strategy.defender", f"bad strategy {spec!r}")


def parse_scenario(obj) -> Scenario:
    if not isinstance(obj, dict):
        raise ScenarioError("$", "scenario must be a JSON object")
    p = _object(obj, "params", "$")
    s = _object(obj, "state", "$")
    if "L" not in p:
        raise ScenarioError("$.params.L", "missing")
    params = build_params(_number(p, "v_A", "$.params"), _number(p, "v_T", "$.params"),
                          parse_length(p["L"], "$.params.L"), "$.params")
    state = MovingFrameState(_number(s, "x_D", "$.state"), _number(s, "x_A", "$.state"),
                             _number(s, "y_A", "$.state"))
    simcfg = {}
    raw_sim = _object(obj, "sim", "$", required=False)
    for key in raw_sim:
        if key not in ("dt", "max_time", "event_tol"):
            raise ScenarioError(f"$.sim.{key}", "unknown field")
        simcfg[key] = _number(raw_sim, key, "$.sim")
    strat = _object(obj, "strategy", "$", required=False)
    for key in strat:
        if key not in ("attacker", "defender"):
            raise ScenarioError(f"$.strategy.{key}", "unknown field")
        if not isinstance(strat[key], str):
            raise ScenarioError(f"$.strategy.{key}", "expected a string")
    sc = Scenario(params, state, simcfg, strat.get("attacker", "equilibrium"),
                  strat.get("defender", "equilibrium"))
    sc.strategies()  # validate overrides early
    try:
        sc.sim_config()
    except ValueError as exc:
        raise ScenarioError("$.sim", str(exc)) from exc
    return sc


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    return parse_scenario(obj)

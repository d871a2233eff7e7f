"""Command-line front end.

Exit codes: 0 ok, 1 verification failed, 2 usage or validation error,
3 capture-surface query, 4 I/O error, 5 empty result (no barrier).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import barrier, finite, verify
from . import simulate as sim
from .errors import AtCaptureSurface, GuardError, InvalidParams, NoBarrier
from .game import side_of
from .io import write_csv, write_json
from .scenario import ScenarioError, build_params, load_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPTURE, EXIT_IO, EXIT_EMPTY = 0, 1, 2, 3, 4, 5


def _dump(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _require_scenario(args):
    if not args.scenario:
        raise ScenarioError("--scenario", "required for this command")
    return load_scenario(args.scenario)


def _params(args):
    """Params from --scenario, overridden field by field by --vA/--vT/--L."""
    base = load_scenario(args.scenario).params if args.scenario else None
    v_A = args.vA if args.vA is not None else (base.v_A if base else None)
    v_T = args.vT if args.vT is not None else (base.v_T if base else None)
    L = args.L if args.L is not None else (base.L if base else math.inf)
    if v_A is None or v_T is None:
        raise ScenarioError("--vA/--vT", "give --scenario or both --vA and --vT")
    return build_params(v_A, v_T, L, "--vA/--vT/--L")


def _length(text):
    if text.lower() in ("inf", "infinite"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'infinite', got {text!r}") from None


# -- commands ---------------------------------------------------------------

def cmd_value(args):
    sc = _require_scenario(args)
    d = finite.solve(sc.state, sc.params)
    _dump(d.to_dict())
    return EXIT_OK


def cmd_strategy(args):
    sc = _require_scenario(args)
    st = sc.state
    side_of(st)  # capture-surface states have no strategy
    pair = sc.strategies()
    c, s = pair.attacker(0.0, st.x_D, st.x_A, st.y_A)
    w = max(-1.0, min(1.0, float(pair.defender(0.0, st.x_D, st.x_A, st.y_A))))
    out = {
        "attacker": {"strategy": sc.attacker, "cos_phi": c, "sin_phi": s,
                     "phi": math.atan2(s, c)},
        "defender": {"strategy": sc.defender, "w": w},
    }
    if sc.attacker == "equilibrium":
        out["regime"] = finite.solve(st, sc.params).regime.value
    _dump(out)
    return EXIT_OK


def cmd_simulate(args):
    sc = _require_scenario(args)
    side_of(sc.state)
    cfg = sc.sim_config(dt=args.dt)
    out = sim.simulate(sc.state, sc.params, sc.strategies(), cfg)
    if args.out:
        sim.write_trajectory_csv(out, args.out)
    if args.svg:
        from . import plots
        plots.trajectory_svg(out, sc.params.L, args.svg)
    summary = {"event": out.kind.value, "t_f": out.t_f, "x_D": out.x_D, "x_A": out.x_A,
               "y_A": out.y_A, "miss": out.miss, "attacker_won": out.attacker_won,
               "samples": len(out.trajectory)}
    try:
        summary["V"] = finite.value(sc.state, sc.params)
    except AtCaptureSurface:
        pass
    _dump(summary)
    return EXIT_OK


def _grid(args):
    params = _params(args)
    x_D = args.xd
    if x_D is None:
        x_D = load_scenario(args.scenario).state.x_D if args.scenario else 0.5
    return barrier.value_grid(params, x_D, (args.xmin, args.xmax), (args.ymin, args.ymax),
                              args.nx, args.ny)


def cmd_levelset(args):
    grid = _grid(args)
    if args.out:
        barrier.write_levelset_csv(grid, args.out)
    curve = None
    if args.svg:
        from . import plots
        try:
            curve = barrier.extract_barrier(grid)
        except NoBarrier:
            curve = None
        plots.levelset_svg(grid, args.svg, curve)
    flat = list(grid.regions.ravel())
    counts = {r.value: flat.count(r) for r in barrier.Region}
    _dump({"x_D": grid.x_D, "nx": len(grid.x_A), "ny": len(grid.y_A), "regions": counts})
    return EXIT_OK


def cmd_barrier(args):
    grid = _grid(args)
    curve = barrier.extract_barrier(grid)
    if args.out:
        barrier.write_barrier_csv(curve, args.out)
    if args.svg:
        from . import plots
        plots.levelset_svg(grid, args.svg, curve)
    _dump({"x_D": grid.x_D, "branches": [
        {"side": side.name.lower(), "branch": b, "points": len(pts)}
        for (side, b), pts in sorted(curve.polylines.items(), key=lambda kv: (int(kv[0][0]), kv[0][1]))
    ]})
    return EXIT_OK


def cmd_flowfield(args):
    params = _params(args)
    xs = np.linspace(args.xmin, args.xmax, args.nx)
    ys = np.linspace(args.ymin, args.ymax, args.ny)
    seeds = [(float(X), float(Y)) for Y in ys for X in xs if abs(X) > 1e-9 and Y < 0]
    if not seeds:
        raise ScenarioError("--xmin/--xmax/--ymin/--ymax", "no seeds with X != 0 and Y < 0")
    lines = sim.flow_field(params, seeds, dt=args.dt or 1e-3)
    if args.out:
        rows = ((k, X, Y) for k, (pts, _) in enumerate(lines) for X, Y in pts)
        write_csv(args.out, ("seed", "X", "Y"), rows)
    if args.svg:
        from . import plots
        plots.flowfield_svg(lines, args.svg)
    _dump({"seeds": len(seeds), "outcomes": [kind.value for _, kind in lines]})
    return EXIT_OK


def cmd_verify(args):
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify.run_suite(name, args.seed, args.n) for name in names]
    if args.out:
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        write_json(args.out, payload)
    for r in reports:
        d = r.to_dict()
        print(json.dumps({"suite": r.suite, "seed": r.seed, "passed": r.passed,
                          "n_cases": d["n_cases"], "n_failed": d["n_failed"]}, sort_keys=True))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tguard", description="Moving-target guarding game toolkit.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp, params=False, window=False, svg=True):
        sp.add_argument("--scenario", help="scenario JSON file")
        sp.add_argument("--out", help="output file (CSV, or JSON for verify)")
        if svg:
            sp.add_argument("--svg", help="also write an SVG plot here")
        sp.add_argument("--seed", type=int, default=None, help="random seed (verify)")
        sp.add_argument("--dt", type=float, default=None, help="integration step")
        if params:
            sp.add_argument("--vA", type=float, help="attacker speed")
            sp.add_argument("--vT", type=float, help="target speed")
            sp.add_argument("--L", type=_length, help="target length or 'infinite'")
        if window:
            sp.add_argument("--xmin", type=float, default=window[0])
            sp.add_argument("--xmax", type=float, default=window[1])
            sp.add_argument("--ymin", type=float, default=window[2])
            sp.add_argument("--ymax", type=float, default=window[3])
            sp.add_argument("--nx", type=int, default=window[4])
            sp.add_argument("--ny", type=int, default=window[5])
            sp.add_argument("--xd", type=float, default=None, help="defender position")
        return sp

    common(sub.add_parser("value", help="equilibrium decision and Value")).set_defaults(fn=cmd_value)
    common(sub.add_parser("strategy", help="controls at the scenario state")).set_defaults(fn=cmd_strategy)
    common(sub.add_parser("simulate", help="closed-loop trajectory")).set_defaults(fn=cmd_simulate)
    lw = (-0.5, 1.5, -1.0, 0.0, 101, 101)
    common(sub.add_parser("levelset", help="Value over a window of attacker positions"),
           params=True, window=lw).set_defaults(fn=cmd_levelset)
    common(sub.add_parser("barrier", help="zero-Value curve"),
           params=True, window=lw).set_defaults(fn=cmd_barrier)
    common(sub.add_parser("flowfield", help="equilibrium paths in relative coordinates"),
           params=True, window=(-1.0, 1.0, -0.5, -0.5, 9, 1)).set_defaults(fn=cmd_flowfield)
    v = common(sub.add_parser("verify", help="run a verification suite"), svg=False)
    v.add_argument("--suite", required=True, choices=[*verify.SUITES, "all"])
    v.add_argument("--n", type=int, default=None, help="number of cases")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "nx", 2) < 2 or getattr(args, "ny", 2) < 1:
            raise ScenarioError("--nx/--ny", "grid needs nx >= 2 and ny >= 1")
        return args.fn(args)
    except AtCaptureSurface as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPTURE
    except NoBarrier as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ScenarioError, InvalidParams, GuardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

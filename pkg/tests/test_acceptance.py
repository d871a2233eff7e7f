"""Acceptance gate: one PASS/FAIL line per criterion.

Lines are printed as each check runs (visible with ``-s``) and repeated in
the pytest terminal summary.  Running this file directly prints them too.
"""
import pytest

from tguard import finite, infinite, simulate as sim, verify
from tguard.game import MovingFrameState, Side, make_params
from tguard.infinite import Regime

RESULTS = {}

PARAMS = make_params(0.6, 0.35, 1.0)
S1 = MovingFrameState(0.5, 0.0, 0.15)
S2 = MovingFrameState(0.5, 0.75, -0.2)


def report(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_01_scenario_one_value():
    d = finite.solve(S1, PARAMS)
    ok = abs(d.value - 0.1922) <= 1e-3 and d.regime is Regime.ENDPOINT_AIM
    report(1, ok, f"V={d.value:.6f} (target 0.1922 +/- 1e-3), regime={d.regime.value}")


def test_criterion_02_scenario_two_value():
    d = finite.solve(S2, PARAMS)
    ok = abs(d.value + 0.1531) <= 1e-3 and d.regime is Regime.INFINITE_FORM
    report(2, ok, f"V={d.value:.6f} (target -0.1531 +/- 1e-3), regime={d.regime.value}")


def test_criterion_03_simulation_agreement():
    o1 = sim.simulate_equilibrium(S1, PARAMS, dt=1e-3)
    o2 = sim.simulate_equilibrium(S2, PARAMS, dt=1e-3)
    ok = (o1.kind is sim.OutcomeKind.BREACH and abs(o1.miss - 0.1922) <= 5e-3
          and o2.kind is sim.OutcomeKind.CAPTURE)
    report(3, ok, f"scenario 1 {o1.kind.value} miss={o1.miss:.6f}; scenario 2 {o2.kind.value}")


def test_criterion_04_hamiltonian_identity():
    rep = verify.run_suite("hamiltonian", n=50)
    worst = rep.summary["max_abs_H"]
    ok = rep.passed and len(rep.cases) == 50 * 50 * 2
    report(4, ok, f"{len(rep.cases)} cases, max |H|={worst:.2e} (<= 1e-12)")


def test_criterion_05_isaacs():
    rep = verify.run_suite("isaacs", seed=0, n=20)
    gap = max(c["gap"] for c in rep.cases)
    report(5, rep.passed and len(rep.cases) >= 20,
           f"{len(rep.cases)} checks on 721x201 grids, max gap={gap:.2e}")


def test_criterion_06_oracle_equivalence():
    rep = verify.run_suite("oracle", seed=1, n=100)
    w = rep.summary["worst_error_by_sign"]
    u = rep.summary["unsigned_disagreements_by_sign"]
    report(6, rep.passed and len(rep.cases) == 100,
           f"worst error V>0 {w['positive']:.2e}, V<0 {w['negative']:.2e} (<= 2e-3); "
           f"unsigned-margin disagreements V>0 {u['positive']}, V<0 {u['negative']}")


def test_criterion_07_saddle():
    rep = verify.run_suite("saddle", seed=7, n=50)
    bad = len(rep.failures())
    att = sum(c["player"] == "attacker" for c in rep.cases)
    report(7, rep.passed and att == 50 * 20 and len(rep.cases) == 2000,
           f"{len(rep.cases)} deviations over 20 states, {bad} violations (tol 5e-3)")


def test_criterion_08_flow_field():
    p = make_params(0.7, 0.2)
    rep = verify.run_suite("flowfield")
    resid = max(c["residual"] for c in rep.cases)
    fitted = {1: [], -1: []}
    for c in rep.cases:
        fitted[1 if c["seed_XY"][0] > 0 else -1].append(c["slope"])
    literal = {1: -0.718185, -1: 1.807392}
    ok = rep.passed and all(fitted[k] for k in fitted)
    for lam in (1, -1):
        side = Side(lam)
        ok = ok and abs(infinite.m1(p, side) - literal[lam]) <= 1e-6
        ok = ok and all(abs(s - literal[lam]) <= 1e-6 for s in fitted[lam])
    report(8, ok, f"max residual={resid:.2e}, fitted slopes "
                  f"{min(fitted[1]):.6f} (lam=+1) / {min(fitted[-1]):.6f} (lam=-1)")


def test_criterion_09_static_symmetry():
    rep = verify.run_suite("symmetry", n=101)
    c = rep.cases[0]
    report(9, rep.passed, f"{c['nodes']} nodes, max |V(x,y) - V(1-x,y)|={c['max_abs_diff']:.2e}")


def test_criterion_10_classification():
    rep = verify.run_suite("classification", seed=5, n=500)
    report(10, rep.passed and len(rep.cases) == 500,
           f"{len(rep.cases)} states with |V| > 0.02, {len(rep.failures())} disagreements")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))

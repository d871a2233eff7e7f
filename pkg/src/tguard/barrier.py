"""Value level sets over attacker positions and the zero-level barrier."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import finite
from .errors import AtCaptureSurface, NoBarrier
from .game import EPS_CAPTURE, GameParams, MovingFrameState, Side
from .io import write_csv

EPS_V = 1e-9


class Region(str, enum.Enum):
    ATTACKER_WIN = "AttackerWin"
    DEFENDER_WIN = "DefenderWin"
    BARRIER = "Barrier"
    CAPTURE = "Capture"


def _label(V, eps_v=EPS_V):
    if V > eps_v:
        return Region.ATTACKER_WIN
    if V < -eps_v:
        return Region.DEFENDER_WIN
    return Region.BARRIER


def classify(state: MovingFrameState, params: GameParams, eps_v: float = EPS_V) -> Region:
    try:
        V = finite.value(state, params)
    except AtCaptureSurface:
        return Region.CAPTURE
    return _label(V, eps_v)


@dataclass
class LevelSetGrid:
    params: GameParams
    x_D: float
    x_A: np.ndarray          # (nx,)
    y_A: np.ndarray          # (ny,)
    V: np.ndarray            # (ny, nx), nan on the capture column
    regions: np.ndarray      # (ny, nx) of Region

    def rows(self):
        for j, y in enumerate(self.y_A):
            for i, x in enumerate(self.x_A):
                yield float(x), float(y), float(self.V[j, i]), self.regions[j, i].value


@dataclass
class BarrierCurve:
    """Zero-Value polylines keyed by ``(side, branch)``.

    ``branch`` counts roots from the bottom of each column, so a window
    spanning both sides of the target line yields separate lower and upper
    curves.
    """

    polylines: dict

    def rows(self):
        for (side, branch) in sorted(self.polylines, key=lambda k: (int(k[0]), k[1])):
            for x, y in self.polylines[side, branch]:
                yield side.name.lower(), x, y


def value_grid(params: GameParams, x_D: float, xlim=(-0.5, 1.5), ylim=(-1.0, 0.0),
               nx: int = 101, ny: int = 101) -> LevelSetGrid:
    xs = np.linspace(xlim[0], xlim[1], nx)
    ys = np.linspace(ylim[0], ylim[1], ny)
    V = np.full((ny, nx), np.nan)
    regions = np.empty((ny, nx), dtype=object)
    for i, x in enumerate(xs):
        on_capture = abs(x - x_D) < EPS_CAPTURE
        for j, y in enumerate(ys):
            if on_capture:
                regions[j, i] = Region.CAPTURE
                continue
            v = finite.value(MovingFrameState(x_D, float(x), float(y)), params)
            V[j, i] = v
            regions[j, i] = _label(v)
    return LevelSetGrid(params, x_D, xs, ys, V, regions)


def _refine(f, a, b, fa, tol_v=1e-8):
    # bisection on the analytic Value between bracketing nodes a and b
    while True:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if abs(fm) <= tol_v or mid == a or mid == b:
            return mid, fm
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid


def extract_barrier(grid: LevelSetGrid, tol_v: float = 1e-8) -> BarrierCurve:
    polylines: dict = {}
    found = False
    for i, x in enumerate(grid.x_A):
        col = grid.V[:, i]
        if np.all(np.isnan(col)):
            continue
        x = float(x)
        side = Side.ATTACKER_AHEAD if x > grid.x_D else Side.DEFENDER_AHEAD

        def f(y, x=x):
            return finite.value(MovingFrameState(grid.x_D, x, y), grid.params)

        branch = 0
        for j in range(len(col) - 1):
            a, b = col[j], col[j + 1]
            if math.isnan(a) or math.isnan(b):
                continue
            y0, y1 = float(grid.y_A[j]), float(grid.y_A[j + 1])
            if a == 0.0:
                root = y0
            elif b == 0.0 or (a > 0) == (b > 0):
                continue
            else:
                root, _ = _refine(f, y0, y1, a, tol_v)
            polylines.setdefault((side, branch), []).append((x, root))
            branch += 1
            found = True
    if not found:
        raise NoBarrier("no sign change of the Value inside the window")
    return BarrierCurve(polylines)


def write_levelset_csv(grid: LevelSetGrid, path) -> None:
    write_csv(path, ("x_A", "y_A", "V", "region"), grid.rows())


def write_barrier_csv(curve: BarrierCurve, path) -> None:
    write_csv(path, ("regime", "x_A", "y_A"), curve.rows())

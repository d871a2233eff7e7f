"""SVG renderings of trajectories, level sets and flow fields.

Styling is not part of any contract.  Output is made byte-stable by fixing
the SVG hash salt and dropping the date metadata.
"""
from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import atomic_write_text  # noqa: E402

plt.rcParams["svg.hashsalt"] = "tguard"


def _save(fig, path):
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    atomic_write_text(path, buf.getvalue())


def _draw_target(ax, L):
    if math.isfinite(L):
        ax.plot([0, L], [0, 0], color="k", lw=3, solid_capstyle="butt", label="target")
    else:
        ax.axhline(0.0, color="k", lw=2)


def trajectory_svg(outcome, L, path):
    tr = np.array([r[:7] for r in outcome.trajectory], dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    _draw_target(ax, L)
    ax.plot(tr[:, 2], tr[:, 3], "r--", label="attacker")
    ax.plot(tr[:, 1], np.zeros(len(tr)), "b-", lw=1.5, label="defender")
    ax.plot(tr[0, 2], tr[0, 3], "ro")
    ax.plot(tr[-1, 2], tr[-1, 3], "rx")
    ax.plot(tr[-1, 1], 0.0, "bs")
    ax.set_xlabel(r"$\hat{x}$")
    ax.set_ylabel(r"$\hat{y}$")
    ax.set_title(f"{outcome.kind.value} at t = {outcome.t_f:.4f}")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="best")
    _save(fig, path)


def levelset_svg(grid, path, barrier=None):
    fig, ax = plt.subplots(figsize=(6, 4))
    V = np.ma.masked_invalid(grid.V)
    lim = float(np.nanmax(np.abs(grid.V))) or 1.0
    cs = ax.contourf(grid.x_A, grid.y_A, V, levels=21, cmap="RdBu_r", vmin=-lim, vmax=lim)
    fig.colorbar(cs, ax=ax, label="V")
    ax.contourf(grid.x_A, grid.y_A, V, levels=[0, lim], colors="none", hatches=["//"])
    if barrier is not None:
        for pts in barrier.polylines.values():
            xy = np.array(pts)
            ax.plot(xy[:, 0], xy[:, 1], "k-", lw=2)
    ax.axvline(grid.x_D, color="b", lw=1)
    _draw_target(ax, grid.params.L)
    ax.set_xlabel(r"$\hat{x}_A$")
    ax.set_ylabel(r"$\hat{y}_A$")
    ax.set_title(rf"$v_A$={grid.params.v_A}, $v_T$={grid.params.v_T}, $\hat{{x}}_D$={grid.x_D}")
    _save(fig, path)


def flowfield_svg(lines, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for pts, kind in lines:
        xy = np.array(pts)
        ax.plot(xy[:, 0], xy[:, 1], "r-" if kind.value == "breach" else "b--", lw=1)
    ax.axhline(0.0, color="k", lw=1)
    ax.axvline(0.0, color="k", lw=1)
    ax.set_xlabel("X")
    ax.set_ylabel("Y")
    _save(fig, path)

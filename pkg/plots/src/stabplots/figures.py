"""Figure builders over stabkit CLI tables.

Every figure is identified by a fixed id, consumes one or more tables by
role name, and never computes any physics itself: thresholds, verdicts and
residuals are read from the files as written.  Region figures share one
fixed three-class legend; rendering is deterministic for fixed inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from .io import EmptyGridError, PlotDataError, Table, read_table

__all__ = [
    "FigureSpec",
    "LABEL_ORDER",
    "LABEL_COLORS",
    "figure_ids",
    "render",
    "ziegler_topology",
]

LABEL_ORDER = ("AsymptoticallyStable", "MarginallyStable", "Unstable")
LABEL_COLORS = {
    "AsymptoticallyStable": "#2d7f3f",
    "MarginallyStable": "#e3b02f",
    "Unstable": "#b53a35",
}


@dataclass(frozen=True)
class FigureSpec:
    """One render request: figure id, role -> table path, output image path."""

    figure_id: str
    inputs: dict[str, str]
    output: str
    title: str | None = None
    axis_labels: tuple[str, str] | None = None
    shade_column: str = "value"
    dpi: int = 150
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# shared helpers


def _edges(centers: np.ndarray) -> np.ndarray:
    c = np.asarray(centers, dtype=float)
    if c.size == 1:
        return np.array([c[0] - 0.5, c[0] + 0.5])
    mids = 0.5 * (c[1:] + c[:-1])
    return np.concatenate([[c[0] - (mids[0] - c[0])], mids, [c[-1] + (c[-1] - mids[-1])]])


def _pivot(table: Table, xcol: str, ycol: str, vcol: str):
    """Rectangular-grid pivot: unique x columns, unique y rows, value matrix."""
    xs = table.floats(xcol)
    ys = table.floats(ycol)
    vals = table.column(vcol)
    ux = np.unique(xs)
    uy = np.unique(ys)
    if ux.size * uy.size != len(table):
        raise PlotDataError(
            f"rows do not form a full {xcol} x {ycol} grid "
            f"({ux.size} x {uy.size} != {len(table)})"
        )
    xi = {v: i for i, v in enumerate(ux)}
    yi = {v: i for i, v in enumerate(uy)}
    grid = np.empty((uy.size, ux.size), dtype=object)
    for x, y, v in zip(xs, ys, vals):
        grid[yi[y], xi[x]] = v
    return ux, uy, grid


def _class_index(value) -> int:
    if isinstance(value, str):
        if value not in LABEL_ORDER:
            if value == "DegenerateMarginal":
                return LABEL_ORDER.index("MarginallyStable")
            raise PlotDataError(f"unknown verdict label {value!r}")
        return LABEL_ORDER.index(value)
    # numeric verdicts: nonzero = stable region, zero = unstable
    return 0 if float(value) != 0.0 else 2


def _region_axes(ax, table: Table, xcol: str, ycol: str, vcol: str):
    ux, uy, grid = _pivot(table, xcol, ycol, vcol)
    classes = np.empty(grid.shape, dtype=float)
    for (i, j), v in np.ndenumerate(grid):
        classes[i, j] = _class_index(v)
    cmap = ListedColormap([LABEL_COLORS[l] for l in LABEL_ORDER])
    ax.pcolormesh(
        _edges(ux), _edges(uy), classes, cmap=cmap, vmin=-0.5, vmax=2.5, shading="flat"
    )
    handles = [Patch(facecolor=LABEL_COLORS[l], label=l) for l in LABEL_ORDER]
    ax.legend(handles=handles, loc="upper right", fontsize=8, framealpha=0.9)
    return ux, uy, grid


def _stable_class(value) -> bool:
    return _class_index(value) != 2


# ---------------------------------------------------------------------------
# figure builders


def ziegler_topology(table: Table) -> dict:
    """Region tops read off the ziegler-label sweep grid.

    undamped_top: largest load not labeled Unstable on the smallest-|b|
    column; damped_top: largest AsymptoticallyStable load on the first
    b > 0 column.  The damped region sitting strictly inside the undamped
    interval is the destabilization signature.
    """
    ux, uy, grid = _pivot(table, "b", "P", "value")
    j0 = int(np.argmin(np.abs(ux)))
    col0 = grid[:, j0]
    tops0 = [p for p, v in zip(uy, col0) if _stable_class(v)]
    positive = [j for j, b in enumerate(ux) if b > ux[j0]]
    if not positive:
        raise PlotDataError("grid carries no positive damping column")
    j1 = positive[0]
    tops1 = [
        p for p, v in zip(uy, grid[:, j1]) if _class_index(v) == 0
    ]
    return {
        "undamped_top": max(tops0) if tops0 else math.nan,
        "damped_top": max(tops1) if tops1 else math.nan,
        "small_b": float(ux[j1]),
    }


def _fig_ziegler(tables: dict[str, Table], spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    table = tables["sweep"]
    _region_axes(ax, table, "b", "P", spec.shade_column)
    topo = ziegler_topology(table)
    if math.isfinite(topo["undamped_top"]):
        ax.axhline(topo["undamped_top"], color="k", lw=0.8, ls=":")
        ax.annotate(
            f"undamped interval top ≈ {topo['undamped_top']:.3f}",
            xy=(0.02, 0.96), xycoords="axes fraction", fontsize=8, va="top",
        )
    xl, yl = spec.axis_labels or ("joint damping b", "follower load P")
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    ax.set_title(spec.title or "Follower-load pendulum: damped vs undamped stability")
    return fig


def _fig_increment(tables: dict[str, Table], spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    table = tables["sweep"]
    cols = list(table.columns)
    if len(cols) < 3:
        raise PlotDataError("increment figure needs a two-axis sweep table")
    xcol, ycol = cols[0], cols[1]
    _region_axes(ax, table, xcol, ycol, spec.shade_column)
    xl, yl = spec.axis_labels or (xcol, ycol)
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    ax.set_title(spec.title or "Instability domain and its increment under damping")
    return fig


def _fig_whitney(tables: dict[str, Table], spec: FigureSpec):
    table = tables["sample"]
    table.require("y1", "y2", "y3")
    n = math.isqrt(len(table))
    if n * n != len(table):
        raise PlotDataError("surface sample is not a square grid")
    y1 = table.floats("y1").reshape(n, n)
    y2 = table.floats("y2").reshape(n, n)
    y3 = table.floats("y3").reshape(n, n)
    fig = plt.figure(figsize=(6.0, 5.0))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(
        y1, y2, y3, rstride=1, cstride=1, color="#7fa8d0",
        edgecolor="#2f4a66", linewidth=0.15, antialiased=False,
    )
    xl, yl = spec.axis_labels or ("y1", "y2")
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    ax.set_zlabel("y3")
    ax.view_init(elev=18.0, azim=-64.0)
    ax.set_title(spec.title or "Pinched ruled surface with self-intersection handle")
    return fig


def _fig_mb_body(tables: dict[str, Table], spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    table = tables["sweep"]
    cols = list(table.columns)
    xcol, ycol = cols[0], cols[1]
    _region_axes(ax, table, xcol, ycol, spec.shade_column)
    xl, yl = spec.axis_labels or (xcol, ycol)
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    ax.set_title(spec.title or "Closed-form stability body")
    return fig


def _fig_tongues(tables: dict[str, Table], spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    styles = {"undamped": ("#22577a", "-"), "damped": ("#a44a3f", "--")}
    for role in ("undamped", "damped"):
        table = tables[role]
        table.require("eta", "max_modulus", "stable")
        eta = table.floats("eta")
        mods = table.floats("max_modulus")
        color, ls = styles[role]
        ax.plot(eta, mods, color=color, ls=ls, lw=1.4, label=f"{role} multiplier")
        lo = table.floats("eta_b_analytic_lo")[0]
        hi = table.floats("eta_b_analytic_hi")[0]
        for bound in (lo, hi):
            if math.isfinite(bound):
                ax.axvline(bound, color=color, lw=0.7, ls=":")
    ax.axhline(1.0, color="k", lw=0.8)
    xl, yl = spec.axis_labels or ("excitation half-frequency eta", "largest multiplier modulus")
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    ax.legend(fontsize=8)
    ax.set_title(spec.title or "Resonance tongue with and without damping")
    return fig


def _fig_beck(tables: dict[str, Table], spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    table = tables["grid"]
    table.require("d1", "d2", "q_cr_numeric", "q_cr_be12")
    d1 = table.floats("d1")
    d2 = table.floats("d2")
    qn = table.floats("q_cr_numeric")
    qa = table.floats("q_cr_be12")
    cmap = plt.get_cmap("viridis")
    levels = np.unique(d2)
    for k, level in enumerate(levels):
        mask = d2 == level
        order = np.argsort(d1[mask])
        color = cmap(0.15 + 0.7 * k / max(1, levels.size - 1))
        ax.plot(d1[mask][order], qn[mask][order], color=color, marker="o",
                ms=3, lw=1.2, label=f"computed, d2={level:g}")
        ax.plot(d1[mask][order], qa[mask][order], color=color, ls="--", lw=1.0)
    ax.set_xscale("log")
    xl, yl = spec.axis_labels or ("internal damping d1", "critical load")
    ax.set_xlabel(xl)
    ax.set_ylabel(yl)
    ax.legend(fontsize=7)
    ax.set_title(spec.title or "Column flutter load: computed vs quadratic surface")
    return fig


def _fig_baroclinic(tables: dict[str, Table], spec: FigureSpec):
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    thr = tables["thresholds"]
    thr.require("alpha", "U_cI", "U_cR")
    alpha = thr.floats("alpha")
    ax1.plot(alpha, thr.floats("U_cI"), color="#22577a", lw=1.4, label="no dissipation")
    ax1.plot(alpha, thr.floats("U_cR"), color="#a44a3f", lw=1.4, ls="--",
             label="vanishing dissipation")
    ax1.set_xlabel("zonal wavenumber alpha")
    ax1.set_ylabel("critical shear")
    ax1.legend(fontsize=8)
    ax1.set_title("marginal curves")

    por = tables["portrait"]
    por.require("U", "re_c1", "im_c1", "re_c2", "im_c2")
    U = por.floats("U")
    ax2.plot(U, por.floats("re_c1"), color="#22577a", lw=1.2, label="Re c (branch 1)")
    ax2.plot(U, por.floats("re_c2"), color="#5a8bb0", lw=1.2, label="Re c (branch 2)")
    ax2.plot(U, por.floats("im_c1"), color="#a44a3f", lw=1.2, ls="--", label="Im c (branch 1)")
    ax2.set_xlabel("shear U")
    ax2.set_ylabel("phase speed components")
    ax2.legend(fontsize=8)
    ax2.set_title("mode merging")
    if spec.title:
        fig.suptitle(spec.title)
    return fig


_FIGURES: dict[str, tuple[tuple[str, ...], object]] = {
    "ziegler-regions": (("sweep",), _fig_ziegler),
    "instability-increment": (("sweep",), _fig_increment),
    "whitney-surface": (("sample",), _fig_whitney),
    "maxwell-bloch-body": (("sweep",), _fig_mb_body),
    "rotor-tongues": (("undamped", "damped"), _fig_tongues),
    "beck-sections": (("grid",), _fig_beck),
    "baroclinic-merging": (("thresholds", "portrait"), _fig_baroclinic),
}


def figure_ids() -> tuple[str, ...]:
    return tuple(_FIGURES)


def render(spec: FigureSpec) -> str:
    """Build one figure and write it to spec.output; returns the path."""
    if spec.figure_id not in _FIGURES:
        raise PlotDataError(
            f"unknown figure id {spec.figure_id!r}; known: {sorted(_FIGURES)}"
        )
    roles, builder = _FIGURES[spec.figure_id]
    missing = [r for r in roles if r not in spec.inputs]
    if missing:
        raise PlotDataError(f"figure {spec.figure_id!r} needs input role(s) {missing}")
    tables = {role: read_table(spec.inputs[role]) for role in roles}
    with matplotlib.rc_context({"svg.hashsalt": spec.figure_id}):
        fig = builder(tables, spec)
        try:
            metadata = {"Date": None} if spec.output.endswith(".svg") else None
            fig.savefig(spec.output, dpi=spec.dpi, metadata=metadata)
        finally:
            plt.close(fig)
    return spec.output

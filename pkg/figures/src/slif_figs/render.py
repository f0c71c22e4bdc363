"""Renderers for the three figure kinds.

All drawing goes through the Agg backend with fixed savefig settings, so
rendering the same spec twice produces identical image bytes.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import FigureError, load_response, load_sweep, load_trace
from .spec import FigureSpec

# keep the font stack and layout engine out of user rc files
_RC = {
    "font.family": "DejaVu Sans",
    "svg.hashsalt": "slif-figs",
    "figure.constrained_layout.use": True,
}


def _finish(fig, spec: FigureSpec) -> None:
    out_dir = os.path.dirname(os.path.abspath(spec.output))
    os.makedirs(out_dir, exist_ok=True)
    fig.savefig(spec.output, dpi=spec.dpi, metadata={"Software": "slif-figs"})
    plt.close(fig)


def _render_traces(spec: FigureSpec):
    traces = [load_trace(p) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for tr, label in zip(traces, spec.input_labels()):
        (line,) = ax.plot(tr.time, tr.v, linewidth=1.2, label=label)
        if len(tr.spike_times):
            # mark reset instants on the curve they belong to
            ax.plot(
                tr.spike_times,
                np.interp(tr.spike_times, tr.time, tr.v),
                linestyle="none", marker="x", markersize=7,
                color=line.get_color(),
            )
    if spec.threshold is not None:
        ax.axhline(spec.threshold, linestyle="--", color="0.4", linewidth=1.0,
                   label="threshold")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="best", fontsize=9)
    return fig


def _render_response(spec: FigureSpec):
    curves = [load_response(p) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for c, label in zip(curves, spec.input_labels()):
        ax.plot(c.ist, c.amplitude, linewidth=1.4, label=label)
    if spec.threshold is not None:
        ax.axhline(spec.threshold, linestyle="--", color="0.4", linewidth=1.0,
                   label="threshold")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="best", fontsize=9)
    return fig


def _edges(centers: np.ndarray) -> np.ndarray:
    """Cell edges for pcolormesh; geometric mids suit log-spaced grids."""
    if len(centers) == 1:
        c = centers[0]
        return np.array([c * 0.9, c * 1.1])
    if np.any(centers <= 0.0):
        mids = 0.5 * (centers[:-1] + centers[1:])
        first = centers[0] - (mids[0] - centers[0])
        last = centers[-1] + (centers[-1] - mids[-1])
    else:
        mids = np.sqrt(centers[:-1] * centers[1:])
        first = centers[0] ** 2 / mids[0]
        last = centers[-1] ** 2 / mids[-1]
    return np.concatenate([[first], mids, [last]])


def _render_heatmap(spec: FigureSpec):
    grid = load_sweep(spec.inputs[0])
    data = grid.values[spec.value_column]
    fig, ax = plt.subplots(figsize=(6.4, 5.0))
    x_edges = _edges(grid.axis1)
    y_edges = _edges(grid.axis2)
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("white")
    # pcolormesh draws each cell flat: masked (error) cells stay blank and
    # are hatched below, never filled from their neighbours
    mesh = ax.pcolormesh(x_edges, y_edges, data.T, cmap=cmap, shading="flat")
    if grid.error_mask.any():
        bad = np.ma.array(
            np.zeros_like(grid.error_mask, dtype=float),
            mask=~grid.error_mask,
        )
        ax.pcolor(x_edges, y_edges, bad.T, hatch="////", alpha=0.0)
    if np.all(grid.axis1 > 0.0):
        ax.set_xscale("log")
    if np.all(grid.axis2 > 0.0):
        ax.set_yscale("log")
    ax.set_xlabel(spec.x_label if spec.x_label != "axis1" else "axis1")
    ax.set_ylabel(spec.y_label if spec.y_label != "axis2" else "axis2")
    if spec.title:
        ax.set_title(spec.title)
    fig.colorbar(mesh, ax=ax, label=spec.value_column)
    return fig


_RENDERERS = {
    "traces": _render_traces,
    "response": _render_response,
    "heatmap": _render_heatmap,
}


def render(spec: FigureSpec) -> str:
    """Draw the figure described by spec and write it to spec.output."""
    with matplotlib.rc_context(_RC):
        fig = _RENDERERS[spec.kind](spec)
        _finish(fig, spec)
    return spec.output

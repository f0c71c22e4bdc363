"""CSV loading with strict schema checks.

Each loader validates the header against the producing tool's schema and
fails with the offending column names, so a mismatched or truncated file
is reported before any drawing happens.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

TRACE_COLUMNS = ("time_ms", "v_mV", "g_s", "spike")
RESPONSE_COLUMNS = ("ist_ms", "amplitude_mV")
SWEEP_COLUMNS = (
    "axis1", "axis2", "favorite_ist_ms", "max_amplitude_mV",
    "margin_mV", "timewidth_ms", "flags",
)


class FigureError(ValueError):
    """Anything that prevents rendering: bad spec, bad or empty input."""


def _read_rows(path: str, columns: tuple[str, ...]) -> list[dict]:
    if not os.path.exists(path):
        raise FigureError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FigureError(f"{path}: empty file, expected columns {list(columns)}")
        if tuple(h.strip() for h in header) != columns:
            missing = sorted(set(columns) - set(header))
            extra = sorted(set(header) - set(columns))
            raise FigureError(
                f"{path}: column mismatch, missing {missing}, unexpected {extra}"
            )
        rows = [dict(zip(columns, row)) for row in reader if row]
    if not rows:
        raise FigureError(f"{path}: no data rows")
    return rows


@dataclass(frozen=True)
class Trace:
    time: np.ndarray
    v: np.ndarray
    spike_times: np.ndarray   # samples flagged as output spikes


def load_trace(path: str) -> Trace:
    rows = _read_rows(path, TRACE_COLUMNS)
    time = np.array([float(r["time_ms"]) for r in rows])
    v = np.array([float(r["v_mV"]) for r in rows])
    spikes = np.array(
        [float(r["time_ms"]) for r in rows if r["spike"].strip() == "1"]
    )
    return Trace(time=time, v=v, spike_times=spikes)


@dataclass(frozen=True)
class Response:
    ist: np.ndarray
    amplitude: np.ndarray


def load_response(path: str) -> Response:
    rows = _read_rows(path, RESPONSE_COLUMNS)
    return Response(
        ist=np.array([float(r["ist_ms"]) for r in rows]),
        amplitude=np.array([float(r["amplitude_mV"]) for r in rows]),
    )


@dataclass(frozen=True)
class SweepGrid:
    """Long-format sweep rows reassembled into a rectangular grid."""

    axis1: np.ndarray            # row coordinates, in file order
    axis2: np.ndarray            # column coordinates, in file order
    values: dict                 # metric column -> 2D masked array
    error_mask: np.ndarray       # True where the cell carries an error flag


def load_sweep(path: str) -> SweepGrid:
    rows = _read_rows(path, SWEEP_COLUMNS)
    # preserve file order; the producer writes row-major over (axis1, axis2)
    a1 = list(dict.fromkeys(r["axis1"] for r in rows))
    a2 = list(dict.fromkeys(r["axis2"] for r in rows))
    n1, n2 = len(a1), len(a2)
    if n1 * n2 != len(rows):
        raise FigureError(
            f"{path}: {len(rows)} rows do not fill a {n1}x{n2} grid"
        )
    index = {(r["axis1"], r["axis2"]): r for r in rows}
    error_mask = np.zeros((n1, n2), dtype=bool)
    values = {
        c: np.zeros((n1, n2)) for c in SWEEP_COLUMNS[2:6]
    }
    for i, x1 in enumerate(a1):
        for j, x2 in enumerate(a2):
            r = index.get((x1, x2))
            if r is None:
                raise FigureError(f"{path}: grid cell ({x1}, {x2}) is missing")
            if r["flags"].startswith("error:"):
                error_mask[i, j] = True
            for c in values:
                x = float(r[c])
                values[c][i, j] = x
                if math.isnan(x) and not error_mask[i, j]:
                    raise FigureError(
                        f"{path}: nan in {c} at ({x1}, {x2}) without an error flag"
                    )
    masked = {
        c: np.ma.array(v, mask=error_mask) for c, v in values.items()
    }
    return SweepGrid(
        axis1=np.array([float(x) for x in a1]),
        axis2=np.array([float(x) for x in a2]),
        values=masked,
        error_mask=error_mask,
    )

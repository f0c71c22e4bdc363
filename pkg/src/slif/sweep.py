"""Two-parameter maps of the timing metrics.

A sweep scans two of (c_m, g_l, tau_s) on log-spaced grids. The third
parameter is either taken from the base parameter set or bound through a
constant-product constraint such as c_m*tau_s = const. Every grid cell
yields a full set of response metrics; cells that fail numerically carry
an error marker instead of aborting the map.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .integrator import IntegratorConfig
from .metrics import DEFAULT_IST_RANGE, ResponseMetrics, metrics, response_curve
from .model import NeuronParams, params_to_dict

SWEEP_PARAMS = ("c_m", "g_l", "tau_s")
PRODUCTS = {
    "c_m*tau_s": ("c_m", "tau_s"),
    "g_l*tau_s": ("g_l", "tau_s"),
    "c_m*g_l": ("c_m", "g_l"),
}


class SweepSpecError(ValueError):
    pass


@dataclass(frozen=True)
class AxisSpec:
    """One log-spaced scan axis over c_m, g_l, or tau_s."""

    name: str
    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if self.name not in SWEEP_PARAMS:
            raise SweepSpecError(
                f"axis must scan one of {SWEEP_PARAMS}, got {self.name!r}"
            )
        # lo == hi is allowed: a degenerate axis repeats one value
        if not 0.0 < self.lo <= self.hi:
            raise SweepSpecError("axis bounds must satisfy 0 < lo <= hi")
        if self.n < 2:
            raise SweepSpecError("axis grid needs n >= 2")

    def grid(self) -> np.ndarray:
        return np.geomspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class SweepSpec:
    axis1: AxisSpec
    axis2: AxisSpec
    base: NeuronParams
    # (product name, value); binds the non-axis parameter to value/partner
    constraint: tuple[str, float] | None = None
    ist_range: tuple[float, float] = DEFAULT_IST_RANGE
    n_points: int = 48
    cfg: IntegratorConfig | None = None

    def __post_init__(self) -> None:
        if self.axis1.name == self.axis2.name:
            raise SweepSpecError("the two axes must scan different parameters")
        if self.constraint is not None:
            name, value = self.constraint
            if name not in PRODUCTS:
                raise SweepSpecError(
                    f"unknown product {name!r} (expected one of {sorted(PRODUCTS)})"
                )
            if not value > 0.0:
                raise SweepSpecError("product constraint value must be > 0")
            if self.third not in PRODUCTS[name]:
                raise SweepSpecError(
                    f"constraint {name!r} ties the two scan axes together "
                    f"and leaves {self.third} undetermined"
                )

    @property
    def third(self) -> str:
        """The parameter not scanned by either axis."""
        return next(p for p in SWEEP_PARAMS if p not in (self.axis1.name, self.axis2.name))

    def params_at(self, x1: float, x2: float) -> NeuronParams:
        values = {self.axis1.name: float(x1), self.axis2.name: float(x2)}
        if self.constraint is not None:
            name, value = self.constraint
            a, b = PRODUCTS[name]
            partner = b if a == self.third else a
            values[self.third] = value / values[partner]
        return self.base.with_(**values)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    axis1_values: np.ndarray
    axis2_values: np.ndarray
    # row-major [i][j]: metrics or None, with errors[i][j] set when None
    cells: tuple
    errors: tuple
    metadata: dict


def _eval_cell(spec: SweepSpec, x1: float, x2: float):
    # isolation: a degenerate corner must not kill the whole map
    try:
        p = spec.params_at(x1, x2)
        curve = response_curve(p, spec.ist_range, spec.n_points, spec.cfg)
        return metrics(curve, p, spec.cfg), None
    except Exception as exc:
        return None, f"{type(exc).__name__}: {exc}"


def run_sweep(spec: SweepSpec, jobs: int | None = None) -> SweepResult:
    """Evaluate metrics at every grid point, row-major over (axis1, axis2)."""
    g1 = spec.axis1.grid()
    g2 = spec.axis2.grid()
    points = [(x1, x2) for x1 in g1 for x2 in g2]
    if jobs is not None and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            flat = list(pool.map(lambda xy: _eval_cell(spec, *xy), points))
    else:
        flat = [_eval_cell(spec, *xy) for xy in points]
    n2 = len(g2)
    cells = tuple(tuple(flat[i * n2 + j][0] for j in range(n2)) for i in range(len(g1)))
    errors = tuple(tuple(flat[i * n2 + j][1] for j in range(n2)) for i in range(len(g1)))
    from . import __version__

    meta = {
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
    }
    return SweepResult(spec, g1, g2, cells, errors, meta)


def _flag_string(m: ResponseMetrics | None, err: str | None) -> str:
    if err is not None:
        return "error:" + err.replace(",", ";").replace("\n", " ")
    flags = []
    if m.tw_low_saturated:
        flags.append("tw_low_saturated")
    if m.tw_high_saturated:
        flags.append("tw_high_saturated")
    if not m.unimodal_grid:
        flags.append("non_unimodal")
    return "|".join(flags)


def sweep_to_csv(result: SweepResult, path) -> None:
    """Long-format rows, one per grid cell; error cells carry nan metrics."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["axis1", "axis2", "favorite_ist_ms", "max_amplitude_mV",
             "margin_mV", "timewidth_ms", "flags"]
        )
        for i, x1 in enumerate(result.axis1_values):
            for j, x2 in enumerate(result.axis2_values):
                m = result.cells[i][j]
                if m is None:
                    body = ["nan"] * 4
                else:
                    body = [repr(m.favorite_ist), repr(m.max_amplitude),
                            repr(m.margin), repr(m.timewidth)]
                writer.writerow(
                    [repr(float(x1)), repr(float(x2)), *body,
                     _flag_string(m, result.errors[i][j])]
                )


def sweep_metadata(result: SweepResult) -> dict:
    spec = result.spec
    return {
        "axes": [
            {"name": a.name, "min": a.lo, "max": a.hi, "n": a.n}
            for a in (spec.axis1, spec.axis2)
        ],
        "constraint": (
            None if spec.constraint is None
            else {"product": spec.constraint[0], "value": spec.constraint[1]}
        ),
        "base": params_to_dict(spec.base),
        "ist_range_ms": list(spec.ist_range),
        "curve_points": spec.n_points,
        **result.metadata,
    }


def sweep_to_json(result: SweepResult, path) -> None:
    with open(path, "w") as fh:
        json.dump(sweep_metadata(result), fh, indent=2, sort_keys=True)
        fh.write("\n")

"""JSON run-configuration parsing and validation.

One JSON document per run, three blocks: "neuron", optional "integrator",
and "experiment" (whose layout depends on the command). All physical
quantities carry unit suffixes in their key names (tau_s_ms, c_m_pF, ...)
so a config is unambiguous on its own. Unknown keys are rejected, and
every error names the offending field.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .calibrate import CalibrationTarget
from .integrator import IntegratorConfig
from .metrics import DEFAULT_IST_RANGE, DEFAULT_T0
from .model import (
    E_S_DEFAULT,
    G_MAX_DEFAULT,
    V_REST_DEFAULT,
    W_DEFAULT,
    ModelKind,
    NeuronParams,
)
from .stimulus import SpikeTrain, periodic, train_from_csv
from .sweep import AxisSpec, SweepSpec


class ConfigError(ValueError):
    """Invalid run configuration; message names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _check_keys(block: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(block) - allowed)
    if unknown:
        raise ConfigError(f"{where}.{unknown[0]}", "unknown key")


def _number(block: dict, key: str, where: str, default=None, required=False):
    if key not in block:
        if required:
            raise ConfigError(f"{where}.{key}", "required key is missing")
        return default
    value = block[key]
    # bool is an int subclass; it is never a valid quantity here
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _integer(block: dict, key: str, where: str, default=None, required=False):
    if key not in block:
        if required:
            raise ConfigError(f"{where}.{key}", "required key is missing")
        return default
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key}", f"expected an integer, got {value!r}")
    return value


def _string(block: dict, key: str, where: str, default=None, required=False):
    if key not in block:
        if required:
            raise ConfigError(f"{where}.{key}", "required key is missing")
        return default
    value = block[key]
    if not isinstance(value, str):
        raise ConfigError(f"{where}.{key}", f"expected a string, got {value!r}")
    return value


def _boolean(block: dict, key: str, where: str, default=False):
    if key not in block:
        return default
    value = block[key]
    if not isinstance(value, bool):
        raise ConfigError(f"{where}.{key}", f"expected true/false, got {value!r}")
    return value


def _pair(block: dict, key: str, where: str):
    if key not in block:
        raise ConfigError(f"{where}.{key}", "required key is missing")
    value = block[key]
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in value)
    ):
        raise ConfigError(f"{where}.{key}", f"expected [lo, hi], got {value!r}")
    return float(value[0]), float(value[1])


NEURON_KEYS = {
    "kind", "c_m_pF", "g_l_nS", "v_th_mV", "v_rest_mV",
    "e_s_mV", "g_max_nS", "tau_s_ms", "delta_g_nS", "w_fC",
}


def parse_neuron(block, where: str = "neuron") -> NeuronParams:
    if not isinstance(block, dict):
        raise ConfigError(where, "expected an object")
    _check_keys(block, NEURON_KEYS, where)
    kind_s = _string(block, "kind", where, required=True)
    try:
        kind = ModelKind(kind_s)
    except ValueError:
        raise ConfigError(f"{where}.kind", f"expected 'lif' or 'slif', got {kind_s!r}")
    try:
        return NeuronParams(
            kind=kind,
            c_m=_number(block, "c_m_pF", where, required=True),
            g_l=_number(block, "g_l_nS", where, required=True),
            v_th=_number(block, "v_th_mV", where, required=True),
            v_rest=_number(block, "v_rest_mV", where, default=V_REST_DEFAULT),
            e_s=_number(block, "e_s_mV", where, default=E_S_DEFAULT),
            g_max=_number(block, "g_max_nS", where, default=G_MAX_DEFAULT),
            tau_s=_number(block, "tau_s_ms", where, default=1.0),
            w=_number(block, "w_fC", where, default=W_DEFAULT),
            delta_g=_number(block, "delta_g_nS", where),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(where, str(exc))


INTEGRATOR_KEYS = {"dt_ms", "scheme", "record_stride"}


def parse_integrator(block, where: str = "integrator") -> IntegratorConfig | None:
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError(where, "expected an object")
    _check_keys(block, INTEGRATOR_KEYS, where)
    try:
        return IntegratorConfig(
            dt=_number(block, "dt_ms", where),
            scheme=_string(block, "scheme", where, default="exponential-euler"),
            record_stride=_integer(block, "record_stride", where, default=1),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(where, str(exc))


RUN_KEYS = {"name", "spike_times_ms", "train_csv", "periodic"}
PERIODIC_KEYS = {"t0_ms", "period_ms", "count"}


def parse_run(block, where: str, base_dir: str) -> tuple[str, SpikeTrain]:
    if not isinstance(block, dict):
        raise ConfigError(where, "expected an object")
    _check_keys(block, RUN_KEYS, where)
    name = _string(block, "name", where, required=True)
    if not name or any(c in name for c in "/\\") or name != name.strip():
        raise ConfigError(f"{where}.name", f"not usable as a file stem: {name!r}")
    sources = [k for k in ("spike_times_ms", "train_csv", "periodic") if k in block]
    if len(sources) != 1:
        raise ConfigError(
            where, "exactly one of spike_times_ms, train_csv, periodic is required"
        )
    try:
        if sources[0] == "spike_times_ms":
            times = block["spike_times_ms"]
            if not isinstance(times, list) or any(
                isinstance(t, bool) or not isinstance(t, (int, float)) for t in times
            ):
                raise ConfigError(
                    f"{where}.spike_times_ms", f"expected a list of numbers, got {times!r}"
                )
            train = SpikeTrain(tuple(float(t) for t in times))
        elif sources[0] == "train_csv":
            rel = _string(block, "train_csv", where, required=True)
            train = train_from_csv(os.path.join(base_dir, rel))
        else:
            pb = block["periodic"]
            if not isinstance(pb, dict):
                raise ConfigError(f"{where}.periodic", "expected an object")
            _check_keys(pb, PERIODIC_KEYS, f"{where}.periodic")
            train = periodic(
                _number(pb, "t0_ms", f"{where}.periodic", required=True),
                _number(pb, "period_ms", f"{where}.periodic", required=True),
                _integer(pb, "count", f"{where}.periodic", required=True),
            )
    except ConfigError:
        raise
    except (ValueError, OSError) as exc:
        raise ConfigError(f"{where}.{sources[0]}", str(exc))
    return name, train


@dataclass(frozen=True)
class SimulatePlan:
    runs: tuple
    horizon: float | None
    firing_enabled: bool


SIMULATE_KEYS = {"runs", "horizon_ms", "firing_enabled"}


def parse_simulate(block, base_dir: str, where: str = "experiment") -> SimulatePlan:
    _check_keys(block, SIMULATE_KEYS, where)
    runs_raw = block.get("runs")
    if not isinstance(runs_raw, list) or not runs_raw:
        raise ConfigError(f"{where}.runs", "expected a nonempty list of run objects")
    runs = tuple(
        parse_run(rb, f"{where}.runs[{i}]", base_dir) for i, rb in enumerate(runs_raw)
    )
    names = [n for n, _ in runs]
    if len(set(names)) != len(names):
        raise ConfigError(f"{where}.runs", "run names must be unique")
    horizon = _number(block, "horizon_ms", where)
    if horizon is not None and horizon <= 0.0:
        raise ConfigError(f"{where}.horizon_ms", f"must be > 0, got {horizon}")
    return SimulatePlan(
        runs=runs,
        horizon=horizon,
        firing_enabled=_boolean(block, "firing_enabled", where, default=True),
    )


@dataclass(frozen=True)
class IstSweepPlan:
    ist_range: tuple[float, float]
    n_points: int
    spacing: str
    t0: float
    tw_offset: float
    lif_baseline: bool


IST_SWEEP_KEYS = {
    "ist_min_ms", "ist_max_ms", "n_points", "spacing",
    "t0_ms", "tw_offset_mV", "lif_baseline",
}


def parse_ist_sweep(block, where: str = "experiment") -> IstSweepPlan:
    _check_keys(block, IST_SWEEP_KEYS, where)
    lo = _number(block, "ist_min_ms", where, default=DEFAULT_IST_RANGE[0])
    hi = _number(block, "ist_max_ms", where, default=DEFAULT_IST_RANGE[1])
    n = _integer(block, "n_points", where, default=200)
    spacing = _string(block, "spacing", where, default="linear")
    t0 = _number(block, "t0_ms", where, default=DEFAULT_T0)
    tw_offset = _number(block, "tw_offset_mV", where, default=0.1)
    if not 0.0 < lo < hi:
        raise ConfigError(f"{where}.ist_min_ms", "need 0 < ist_min_ms < ist_max_ms")
    if n < 3:
        raise ConfigError(f"{where}.n_points", f"must be >= 3, got {n}")
    if spacing not in ("linear", "log"):
        raise ConfigError(f"{where}.spacing", f"expected 'linear' or 'log', got {spacing!r}")
    if t0 <= 0.0:
        raise ConfigError(f"{where}.t0_ms", f"must be > 0, got {t0}")
    if tw_offset <= 0.0:
        raise ConfigError(f"{where}.tw_offset_mV", f"must be > 0, got {tw_offset}")
    return IstSweepPlan(
        ist_range=(lo, hi),
        n_points=n,
        spacing=spacing,
        t0=t0,
        tw_offset=tw_offset,
        lif_baseline=_boolean(block, "lif_baseline", where, default=False),
    )


AXIS_KEYS = {"name", "min", "max", "n"}
GRID_SWEEP_KEYS = {
    "axis1", "axis2", "constraint", "ist_min_ms", "ist_max_ms", "curve_points",
}
CONSTRAINT_KEYS = {"product", "value"}


def _parse_axis(block, where: str) -> AxisSpec:
    if not isinstance(block, dict):
        raise ConfigError(where, "expected an object")
    _check_keys(block, AXIS_KEYS, where)
    try:
        return AxisSpec(
            name=_string(block, "name", where, required=True),
            lo=_number(block, "min", where, required=True),
            hi=_number(block, "max", where, required=True),
            n=_integer(block, "n", where, required=True),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(where, str(exc)) from None


def parse_grid_sweep(
    block, params: NeuronParams, cfg: IntegratorConfig | None, where: str = "experiment"
) -> SweepSpec:
    _check_keys(block, GRID_SWEEP_KEYS, where)
    if "axis1" not in block or "axis2" not in block:
        raise ConfigError(where, "axis1 and axis2 are required")
    axis1 = _parse_axis(block["axis1"], f"{where}.axis1")
    axis2 = _parse_axis(block["axis2"], f"{where}.axis2")
    constraint = None
    if "constraint" in block:
        cb = block["constraint"]
        if not isinstance(cb, dict):
            raise ConfigError(f"{where}.constraint", "expected an object")
        _check_keys(cb, CONSTRAINT_KEYS, f"{where}.constraint")
        constraint = (
            _string(cb, "product", f"{where}.constraint", required=True),
            _number(cb, "value", f"{where}.constraint", required=True),
        )
    lo = _number(block, "ist_min_ms", where, default=DEFAULT_IST_RANGE[0])
    hi = _number(block, "ist_max_ms", where, default=DEFAULT_IST_RANGE[1])
    if not 0.0 < lo < hi:
        raise ConfigError(f"{where}.ist_min_ms", "need 0 < ist_min_ms < ist_max_ms")
    n_points = _integer(block, "curve_points", where, default=48)
    if n_points < 3:
        raise ConfigError(f"{where}.curve_points", f"must be >= 3, got {n_points}")
    try:
        return SweepSpec(
            axis1=axis1,
            axis2=axis2,
            base=params,
            constraint=constraint,
            ist_range=(lo, hi),
            n_points=n_points,
            cfg=cfg,
        )
    except ValueError as exc:
        raise ConfigError(where, str(exc)) from None


@dataclass(frozen=True)
class CalibratePlan:
    target: CalibrationTarget
    ist_range: tuple[float, float]
    curve_points: int


CALIBRATE_KEYS = {
    "target_favorite_ist_ms", "min_margin_mV", "max_timewidth_ms",
    "c_m_bounds_pF", "g_l_bounds_nS", "tau_s_bounds_ms",
    "ist_min_ms", "ist_max_ms", "curve_points",
}


def parse_calibrate(block, where: str = "experiment") -> CalibratePlan:
    _check_keys(block, CALIBRATE_KEYS, where)
    try:
        target = CalibrationTarget(
            target_favorite_ist=_number(block, "target_favorite_ist_ms", where, required=True),
            min_margin=_number(block, "min_margin_mV", where, required=True),
            max_timewidth=_number(block, "max_timewidth_ms", where, required=True),
            c_m_bounds=_pair(block, "c_m_bounds_pF", where),
            g_l_bounds=_pair(block, "g_l_bounds_nS", where),
            tau_s_bounds=_pair(block, "tau_s_bounds_ms", where),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(where, str(exc))
    lo = _number(block, "ist_min_ms", where, default=DEFAULT_IST_RANGE[0])
    hi = _number(block, "ist_max_ms", where, default=DEFAULT_IST_RANGE[1])
    if not 0.0 < lo < hi:
        raise ConfigError(f"{where}.ist_min_ms", "need 0 < ist_min_ms < ist_max_ms")
    n_points = _integer(block, "curve_points", where, default=64)
    if n_points < 3:
        raise ConfigError(f"{where}.curve_points", f"must be >= 3, got {n_points}")
    return CalibratePlan(target=target, ist_range=(lo, hi), curve_points=n_points)


TOP_KEYS = {"neuron", "integrator", "experiment"}


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError("<config>", f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError("<config>", f"invalid JSON in {path}: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError("<config>", "top level must be an object")
    _check_keys(doc, TOP_KEYS, "<config>")
    for key in ("neuron", "experiment"):
        if key not in doc:
            raise ConfigError(key, "required block is missing")
    if not isinstance(doc["experiment"], dict):
        raise ConfigError("experiment", "expected an object")
    return doc

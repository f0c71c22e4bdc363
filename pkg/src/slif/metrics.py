"""Two-pulse response curves and derived timing metrics.

The central object is the mapping IST -> peak membrane amplitude for a
pair of input spikes separated by that interval. From the sampled curve
we extract the favorite IST (argmax), the maximum amplitude, the margin
(max minus min amplitude over the scanned range), and the timewidth: the
width of the IST band whose amplitude stays within ``tw_offset`` of the
maximum.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .integrator import IntegratorConfig, peak_amplitude, simulate
from .model import NeuronParams
from .search import bisect_boundary, golden_max
from .stimulus import pair

DEFAULT_T0 = 1.0
DEFAULT_IST_RANGE = (0.1, 10.0)
REFINE_TOL = 1e-3


@dataclass(frozen=True)
class ResponseCurve:
    """Sampled IST -> peak amplitude mapping (firing disabled)."""

    ists: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        ists = np.asarray(self.ists, dtype=np.float64)
        amps = np.asarray(self.amplitudes, dtype=np.float64)
        if ists.shape != amps.shape or ists.ndim != 1:
            raise ValueError("ists and amplitudes must be 1D arrays of equal length")
        if len(ists) and np.any(np.diff(ists) <= 0.0):
            raise ValueError("ists must be strictly ascending")
        if np.any(amps < 0.0):
            raise ValueError("amplitudes must be >= 0")
        object.__setattr__(self, "ists", ists)
        object.__setattr__(self, "amplitudes", amps)

    def __len__(self) -> int:
        return len(self.ists)


@dataclass(frozen=True)
class ResponseMetrics:
    favorite_ist: float
    max_amplitude: float
    margin: float
    timewidth: float
    tw_low: float
    tw_high: float
    # True when the tw_offset level is never crossed on that side and the
    # bound fell back to the scanned range edge.
    tw_low_saturated: bool = False
    tw_high_saturated: bool = False
    unimodal_grid: bool = True


def amplitude_at(
    params: NeuronParams,
    ist: float,
    cfg: IntegratorConfig | None = None,
    t0: float = DEFAULT_T0,
) -> float:
    """Peak amplitude (mV above rest) for a spike pair separated by ist."""
    trace = simulate(params, pair(t0, ist), cfg=cfg, firing_enabled=False)
    return peak_amplitude(trace, params.v_rest)


def _sample_amplitudes(params, ists, cfg, t0, jobs):
    # executor.map preserves input order, so assembly stays deterministic
    if jobs is not None and jobs > 1 and len(ists) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            amps = list(pool.map(lambda d: amplitude_at(params, d, cfg, t0), ists))
        return np.asarray(amps, dtype=np.float64)
    return np.asarray([amplitude_at(params, d, cfg, t0) for d in ists], dtype=np.float64)


def response_curve(
    params: NeuronParams,
    ist_range: tuple[float, float] = DEFAULT_IST_RANGE,
    n_points: int = 200,
    cfg: IntegratorConfig | None = None,
    spacing: str = "linear",
    t0: float = DEFAULT_T0,
    jobs: int | None = None,
) -> ResponseCurve:
    lo, hi = float(ist_range[0]), float(ist_range[1])
    if not 0.0 < lo < hi:
        raise ValueError("ist_range must satisfy 0 < min < max")
    if n_points < 3:
        raise ValueError("n_points must be >= 3")
    if spacing == "linear":
        ists = np.linspace(lo, hi, n_points)
    elif spacing == "log":
        ists = np.geomspace(lo, hi, n_points)
    else:
        raise ValueError(f"unknown spacing {spacing!r} (expected 'linear' or 'log')")
    amps = _sample_amplitudes(params, ists, cfg, t0, jobs)
    return ResponseCurve(ists=ists, amplitudes=amps)


def _grid_unimodal(amps: np.ndarray, i_max: int) -> bool:
    d = np.diff(amps)
    return bool(np.all(d[:i_max] >= 0.0) and np.all(d[i_max:] <= 0.0))


def metrics(
    curve: ResponseCurve,
    params: NeuronParams,
    cfg: IntegratorConfig | None = None,
    tw_offset: float = 0.1,
    t0: float = DEFAULT_T0,
) -> ResponseMetrics:
    """Extract favorite IST, max amplitude, margin, and timewidth.

    The grid argmax is refined by golden-section search when it is an
    interior point of a unimodal grid; the timewidth bounds are located
    by bisection on amplitude = max_amplitude - tw_offset, saturating to
    the scanned range edge (with a flag) when the level is never crossed
    on that side.
    """
    if len(curve) == 0:
        raise ValueError("empty response curve")
    if tw_offset <= 0.0:
        raise ValueError("tw_offset must be > 0")
    ists, amps = curve.ists, curve.amplitudes
    i = int(np.argmax(amps))
    unimodal = _grid_unimodal(amps, i)

    def amp(x: float) -> float:
        return amplitude_at(params, x, cfg, t0)

    if unimodal and 0 < i < len(ists) - 1:
        fav = golden_max(amp, ists[i - 1], ists[i + 1], REFINE_TOL)
        a_max = amp(fav)
    else:
        fav = float(ists[i])
        a_max = float(amps[i])
    margin = a_max - float(np.min(amps))
    level = a_max - tw_offset

    def below(x: float) -> bool:
        return amp(x) < level

    if amps[0] >= level:
        tw_low, low_sat = float(ists[0]), True
    else:
        tw_low, low_sat = bisect_boundary(below, float(ists[0]), fav, REFINE_TOL), False
    if amps[-1] >= level:
        tw_high, high_sat = float(ists[-1]), True
    else:
        tw_high, high_sat = bisect_boundary(below, fav, float(ists[-1]), REFINE_TOL), False
    return ResponseMetrics(
        favorite_ist=float(fav),
        max_amplitude=float(a_max),
        margin=float(margin),
        timewidth=float(tw_high - tw_low),
        tw_low=float(tw_low),
        tw_high=float(tw_high),
        tw_low_saturated=low_sat,
        tw_high_saturated=high_sat,
        unimodal_grid=unimodal,
    )


def fires(
    params: NeuronParams,
    ist: float,
    cfg: IntegratorConfig | None = None,
    t0: float = DEFAULT_T0,
) -> bool:
    """True iff the spike pair drives the neuron past threshold."""
    trace = simulate(params, pair(t0, ist), cfg=cfg, firing_enabled=True)
    return len(trace.output_spikes) > 0


def fire_band(
    params: NeuronParams,
    cfg: IntegratorConfig | None = None,
    ist_range: tuple[float, float] = DEFAULT_IST_RANGE,
    n_probe: int = 64,
    t0: float = DEFAULT_T0,
) -> tuple[float, float] | None:
    """IST interval over which the pair makes the neuron fire.

    Probes a linear grid, then refines each edge by bisection. Returns
    None when no probed IST fires; an edge at the probed range boundary
    is returned as-is.
    """
    probes = np.linspace(ist_range[0], ist_range[1], n_probe)
    hot = [bool(fires(params, d, cfg, t0)) for d in probes]
    if not any(hot):
        return None
    first = hot.index(True)
    last = len(hot) - 1 - hot[::-1].index(True)

    def is_hot(x: float) -> bool:
        return fires(params, x, cfg, t0)

    lo = probes[first] if first == 0 else bisect_boundary(
        is_hot, float(probes[first - 1]), float(probes[first]), REFINE_TOL
    )
    hi = probes[last] if last == len(probes) - 1 else bisect_boundary(
        is_hot, float(probes[last]), float(probes[last + 1]), REFINE_TOL
    )
    return float(lo), float(hi)


def threshold_for_onset(
    params: NeuronParams,
    onset_ist: float,
    cfg: IntegratorConfig | None = None,
    t0: float = DEFAULT_T0,
) -> float:
    """v_th that places the fire band's lower edge at onset_ist.

    The pair fires exactly when peak amplitude reaches v_th - v_rest, so
    on the rising flank of the response curve the band opens where the
    amplitude first equals that gap.
    """
    return params.v_rest + amplitude_at(params, onset_ist, cfg, t0)


def curve_to_csv(curve: ResponseCurve, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["ist_ms", "amplitude_mV"])
        for d, a in zip(curve.ists, curve.amplitudes):
            writer.writerow([repr(float(d)), repr(float(a))])


def metrics_as_dict(m: ResponseMetrics) -> dict:
    """Flat JSON-ready mapping with unit-suffixed keys."""
    return {
        "favorite_ist_ms": m.favorite_ist,
        "max_amplitude_mV": m.max_amplitude,
        "margin_mV": m.margin,
        "timewidth_ms": m.timewidth,
        "tw_low_ms": m.tw_low,
        "tw_high_ms": m.tw_high,
        "tw_low_saturated": m.tw_low_saturated,
        "tw_high_saturated": m.tw_high_saturated,
        "unimodal_grid": m.unimodal_grid,
    }

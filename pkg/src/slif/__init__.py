"""Saturating-synapse LIF neuron simulator and inter-spike-timing toolkit."""

from .calibrate import (
    CalibrationError,
    CalibrationResult,
    CalibrationTarget,
    calibrate,
)
from .integrator import (
    IntegratorConfig,
    Trace,
    default_dt,
    default_horizon,
    peak_amplitude,
    simulate,
    trace_to_csv,
)
from .metrics import (
    ResponseCurve,
    ResponseMetrics,
    amplitude_at,
    curve_to_csv,
    fire_band,
    fires,
    metrics,
    metrics_as_dict,
    response_curve,
    threshold_for_onset,
)
from .model import (
    InvalidParams,
    ModelKind,
    NeuronParams,
    NeuronState,
    SpikeEvent,
    apply_input_spike,
    check_threshold,
    derivative,
    params_to_dict,
    rest_state,
)
from .stimulus import SpikeTrain, pair, periodic, train_from_csv
from .sweep import (
    AxisSpec,
    SweepResult,
    SweepSpec,
    SweepSpecError,
    run_sweep,
    sweep_to_csv,
    sweep_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "CalibrationError",
    "CalibrationResult",
    "CalibrationTarget",
    "IntegratorConfig",
    "InvalidParams",
    "ModelKind",
    "NeuronParams",
    "NeuronState",
    "ResponseCurve",
    "ResponseMetrics",
    "SpikeEvent",
    "SpikeTrain",
    "SweepResult",
    "SweepSpec",
    "SweepSpecError",
    "Trace",
    "amplitude_at",
    "apply_input_spike",
    "calibrate",
    "check_threshold",
    "curve_to_csv",
    "default_dt",
    "default_horizon",
    "derivative",
    "fire_band",
    "fires",
    "metrics",
    "metrics_as_dict",
    "pair",
    "params_to_dict",
    "peak_amplitude",
    "periodic",
    "response_curve",
    "rest_state",
    "run_sweep",
    "simulate",
    "sweep_to_csv",
    "sweep_to_json",
    "threshold_for_onset",
    "trace_to_csv",
    "train_from_csv",
    "__version__",
]

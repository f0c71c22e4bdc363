"""Neuron model types and discrete event rules.

Two model kinds share one membrane equation:

    c_m * dv/dt = -g_l * (v - v_rest) + I(t)

For the classic LIF, I(t) is a train of charge impulses (each arrival bumps v
by w/c_m).  For the SLIF, I(t) is replaced by a saturating synaptic current
g_s(t) * (e_s - v) where g_s decays exponentially (tau_s) and is pushed toward
its saturation bound g_max on each input arrival.

Units form one coherent system: mV, ms, pF, nS, fC.  With these, c_m/g_l is a
time in ms, g*(mV)/pF is mV/ms, and w/c_m is mV.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace


class ModelKind(enum.Enum):
    LIF = "lif"
    SLIF = "slif"


class InvalidParams(ValueError):
    """A NeuronParams invariant is violated."""


V_REST_DEFAULT = -65.0
E_S_DEFAULT = 0.0
G_MAX_DEFAULT = 0.1   # nS (100 pS)
W_DEFAULT = 0.5       # fC; 5 mV jump at the 0.1 pF reference capacitance


@dataclass(frozen=True)
class NeuronParams:
    """Immutable membrane/synapse constants for one neuron.

    delta_g selects the input-arrival rule for SLIF: None means the default
    saturating mode (g_s is set to g_max on every arrival); a positive value
    means incremental mode g_s <- min(g_s + delta_g, g_max).
    """

    kind: ModelKind
    c_m: float                  # pF
    g_l: float                  # nS
    v_th: float                 # mV
    v_rest: float = V_REST_DEFAULT
    e_s: float = E_S_DEFAULT    # mV
    g_max: float = G_MAX_DEFAULT
    tau_s: float = 1.0          # ms
    w: float = W_DEFAULT        # fC
    delta_g: float | None = None

    def __post_init__(self) -> None:
        if not (self.c_m > 0):
            raise InvalidParams(f"c_m must be > 0, got {self.c_m}")
        if not (self.g_l >= 0):
            raise InvalidParams(f"g_l must be >= 0, got {self.g_l}")
        if not (self.tau_s > 0):
            raise InvalidParams(f"tau_s must be > 0, got {self.tau_s}")
        if not (self.g_max > 0):
            raise InvalidParams(f"g_max must be > 0, got {self.g_max}")
        if not (self.w > 0):
            raise InvalidParams(f"w must be > 0, got {self.w}")
        if not (self.v_rest < self.v_th):
            raise InvalidParams(
                f"v_th ({self.v_th}) must be strictly above v_rest ({self.v_rest})"
            )
        if self.kind is ModelKind.SLIF and not (self.v_th <= self.e_s):
            raise InvalidParams(
                f"v_th ({self.v_th}) must not exceed e_s ({self.e_s})"
            )
        if self.delta_g is not None and not (self.delta_g > 0):
            raise InvalidParams(f"delta_g must be > 0 when set, got {self.delta_g}")

    @property
    def tau_m(self) -> float:
        """Membrane time constant c_m/g_l in ms (inf for a leakless cell)."""
        return self.c_m / self.g_l if self.g_l > 0 else math.inf

    def with_(self, **changes) -> "NeuronParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class NeuronState:
    v: float      # mV
    g_s: float    # nS; 0 for the LIF kind


@dataclass(frozen=True, order=True)
class SpikeEvent:
    time: float   # ms
    source: str   # "input" | "output"


def rest_state(params: NeuronParams) -> NeuronState:
    return NeuronState(v=params.v_rest, g_s=0.0)


def derivative(params: NeuronParams, state: NeuronState) -> tuple[float, float]:
    """Right-hand side (dv/dt in mV/ms, dg_s/dt in nS/ms) away from events."""
    leak = -params.g_l * (state.v - params.v_rest)
    if params.kind is ModelKind.SLIF:
        dv = (leak + state.g_s * (params.e_s - state.v)) / params.c_m
        dgs = -state.g_s / params.tau_s
    else:
        # delta-current input is applied by apply_input_spike, not here
        dv = leak / params.c_m
        dgs = 0.0
    return dv, dgs


def apply_input_spike(params: NeuronParams, state: NeuronState) -> NeuronState:
    """State after one input arrival; v is continuous for SLIF, jumps for LIF."""
    if params.kind is ModelKind.SLIF:
        step = params.g_max if params.delta_g is None else params.delta_g
        return NeuronState(v=state.v, g_s=min(state.g_s + step, params.g_max))
    return NeuronState(v=state.v + params.w / params.c_m, g_s=state.g_s)


def check_threshold(params: NeuronParams, state: NeuronState) -> tuple[bool, NeuronState]:
    """Fire-and-reset rule; comparison is >= so the boundary is exact."""
    if state.v >= params.v_th:
        return True, NeuronState(v=params.v_rest, g_s=state.g_s)
    return False, state


def params_to_dict(params: NeuronParams) -> dict:
    """JSON-ready mapping with unit-suffixed keys (inverse of config parsing)."""
    d = {
        "kind": params.kind.value,
        "c_m_pF": params.c_m,
        "g_l_nS": params.g_l,
        "v_rest_mV": params.v_rest,
        "v_th_mV": params.v_th,
    }
    if params.kind is ModelKind.SLIF:
        d["e_s_mV"] = params.e_s
        d["g_max_nS"] = params.g_max
        d["tau_s_ms"] = params.tau_s
        if params.delta_g is not None:
            d["delta_g_nS"] = params.delta_g
    else:
        d["w_fC"] = params.w
    return d

"""Regenerate the pinned reference parameter set shipped with the package.

Runs the calibration described by configs/pinned_calibration.json, fits the
firing threshold so the fire band opens at 2.0 ms, measures the resulting
band and metrics, and stores everything under src/slif/data/. Deterministic:
re-running reproduces the same file.

Usage: python3 scripts/pin_reference.py
"""

import json
import os

from slif import (
    calibrate,
    fire_band,
    metrics,
    metrics_as_dict,
    params_to_dict,
    response_curve,
    threshold_for_onset,
)
from slif.config import parse_calibrate, parse_neuron

BAND_ONSET_MS = 2.0

root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
config_path = os.path.join(root, "configs", "pinned_calibration.json")
out_path = os.path.join(root, "src", "slif", "data", "pinned_reference.json")

with open(config_path) as fh:
    doc = json.load(fh)
base = parse_neuron(doc["neuron"])
plan = parse_calibrate(doc["experiment"])

result = calibrate(plan.target, base, ist_range=plan.ist_range,
                   curve_points=plan.curve_points)
v_th = threshold_for_onset(result.params, BAND_ONSET_MS)
params = result.params.with_(v_th=v_th)
band = fire_band(params)
achieved = metrics(response_curve(params, n_points=200), params)

payload = {
    "params": params_to_dict(params),
    "achieved": metrics_as_dict(achieved),
    "fire_band_ms": list(band),
    "band_onset_target_ms": BAND_ONSET_MS,
    "calibration": {
        "config": doc,
        "stages": result.stages,
        "warnings": list(result.warnings),
    },
    "regenerate_with": "python3 scripts/pin_reference.py",
}
with open(out_path, "w") as fh:
    json.dump(payload, fh, indent=2, sort_keys=True)
    fh.write("\n")
print(f"wrote {out_path}")
print(f"fav={achieved.favorite_ist:.4f} ms  band=[{band[0]:.4f}, {band[1]:.4f}] ms  "
      f"v_th={v_th:.4f} mV")

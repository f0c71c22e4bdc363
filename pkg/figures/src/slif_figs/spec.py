"""Figure specification: one JSON document per figure."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .io import FigureError, SWEEP_COLUMNS

KINDS = ("traces", "response", "heatmap")
METRIC_COLUMNS = SWEEP_COLUMNS[2:6]

SPEC_KEYS = {
    "kind", "inputs", "labels", "output", "title",
    "x_label", "y_label", "threshold_mV", "value_column", "dpi",
}

DEFAULT_AXIS_LABELS = {
    "traces": ("time (ms)", "membrane potential (mV)"),
    "response": ("inter-spike timing (ms)", "peak amplitude (mV)"),
    "heatmap": ("axis1", "axis2"),
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    output: str
    labels: tuple[str, ...] = ()
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    threshold: float | None = None   # mV; dashed line when set
    value_column: str = "favorite_ist_ms"   # heatmap metric
    dpi: int = 120

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise FigureError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise FigureError("inputs must be a nonempty list of CSV paths")
        if self.kind == "heatmap" and len(self.inputs) != 1:
            raise FigureError("heatmap takes exactly one sweep CSV")
        if self.labels and len(self.labels) != len(self.inputs):
            raise FigureError(
                f"got {len(self.labels)} labels for {len(self.inputs)} inputs"
            )
        if not self.output:
            raise FigureError("output image path is required")
        if self.value_column not in METRIC_COLUMNS:
            raise FigureError(
                f"value_column must be one of {list(METRIC_COLUMNS)}, "
                f"got {self.value_column!r}"
            )
        if self.dpi < 10:
            raise FigureError(f"dpi must be >= 10, got {self.dpi}")

    def input_labels(self) -> tuple[str, ...]:
        if self.labels:
            return self.labels
        return tuple(
            os.path.splitext(os.path.basename(p))[0] for p in self.inputs
        )


def _expect(doc: dict, key: str, types, default=None, required=False):
    if key not in doc:
        if required:
            raise FigureError(f"spec.{key}: required key is missing")
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, types):
        raise FigureError(f"spec.{key}: unexpected value {value!r}")
    return value


def parse_spec(doc: dict, base_dir: str = ".") -> FigureSpec:
    if not isinstance(doc, dict):
        raise FigureError("spec: top level must be an object")
    unknown = sorted(set(doc) - SPEC_KEYS)
    if unknown:
        raise FigureError(f"spec.{unknown[0]}: unknown key")
    kind = _expect(doc, "kind", str, required=True)
    inputs = doc.get("inputs")
    if not isinstance(inputs, list) or not all(isinstance(p, str) for p in inputs):
        raise FigureError("spec.inputs: expected a list of CSV paths")
    labels = doc.get("labels", [])
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise FigureError("spec.labels: expected a list of strings")
    x_default, y_default = DEFAULT_AXIS_LABELS.get(kind, ("", ""))
    threshold = _expect(doc, "threshold_mV", (int, float))
    return FigureSpec(
        kind=kind,
        inputs=tuple(os.path.join(base_dir, p) for p in inputs),
        output=os.path.join(base_dir, _expect(doc, "output", str, required=True)),
        labels=tuple(labels),
        title=_expect(doc, "title", str, default=""),
        x_label=_expect(doc, "x_label", str, default=x_default),
        y_label=_expect(doc, "y_label", str, default=y_default),
        threshold=None if threshold is None else float(threshold),
        value_column=_expect(doc, "value_column", str, default="favorite_ist_ms"),
        dpi=_expect(doc, "dpi", int, default=120),
    )


def load_spec(path: str) -> FigureSpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FigureError(f"cannot read spec {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise FigureError(f"invalid JSON in {path}: {exc}")
    return parse_spec(doc, base_dir=os.path.dirname(os.path.abspath(path)))

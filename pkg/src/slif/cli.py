"""Command-line front end.

Five subcommands, each driven by a JSON config and writing CSV/JSON into
an output directory:

    slif simulate   --config run.json --out dir    trace CSV per run + summary
    slif ist-sweep  --config run.json --out dir    response CSV + metrics JSON
    slif grid-sweep --config run.json --out dir    long CSV map + metadata
    slif calibrate  --config run.json --out dir    fitted params + report
    slif compare    --config run.json --out dir    paired traces vs a LIF twin

Exit codes: 0 ok, 2 bad config, 3 infeasible calibration, 4 sweep finished
with failed cells.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .calibrate import CalibrationError, calibrate
from .config import (
    ConfigError,
    load_config,
    parse_calibrate,
    parse_grid_sweep,
    parse_integrator,
    parse_ist_sweep,
    parse_neuron,
    parse_simulate,
)
from .integrator import peak_amplitude, simulate, trace_to_csv
from .metrics import curve_to_csv, metrics, metrics_as_dict, response_curve
from .model import ModelKind, params_to_dict
from .sweep import run_sweep, sweep_to_csv, sweep_to_json


def _write_json(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_simulate(block, params, cfg, base_dir, out, jobs) -> int:
    plan = parse_simulate(block, base_dir)
    summary = {"runs": {}}
    for name, train in plan.runs:
        trace = simulate(params, train, plan.horizon, cfg, plan.firing_enabled)
        trace_to_csv(trace, os.path.join(out, f"{name}.csv"))
        summary["runs"][name] = {
            "trace_csv": f"{name}.csv",
            "peak_amplitude_mV": peak_amplitude(trace, params.v_rest),
            "n_input_spikes": len(train),
            "n_output_spikes": len(trace.output_spikes),
        }
    _write_json(summary, os.path.join(out, "summary.json"))
    return 0


def cmd_ist_sweep(block, params, cfg, base_dir, out, jobs) -> int:
    plan = parse_ist_sweep(block)
    targets = [("response.csv", "metrics.json", params)]
    if plan.lif_baseline:
        targets.append(
            ("response_lif.csv", "metrics_lif.json", params.with_(kind=ModelKind.LIF))
        )
    for csv_name, json_name, p in targets:
        curve = response_curve(
            p, plan.ist_range, plan.n_points, cfg, plan.spacing, plan.t0, jobs
        )
        m = metrics(curve, p, cfg, plan.tw_offset, plan.t0)
        curve_to_csv(curve, os.path.join(out, csv_name))
        _write_json(metrics_as_dict(m), os.path.join(out, json_name))
    return 0


def cmd_grid_sweep(block, params, cfg, base_dir, out, jobs) -> int:
    spec = parse_grid_sweep(block, params, cfg)
    result = run_sweep(spec, jobs=jobs)
    sweep_to_csv(result, os.path.join(out, "sweep.csv"))
    sweep_to_json(result, os.path.join(out, "sweep_meta.json"))
    failed = sum(1 for row in result.errors for err in row if err is not None)
    if failed:
        total = len(result.axis1_values) * len(result.axis2_values)
        print(
            f"{failed} of {total} sweep cells failed; see the flags column",
            file=sys.stderr,
        )
        return 4
    return 0


def cmd_calibrate(block, params, cfg, base_dir, out, jobs) -> int:
    plan = parse_calibrate(block)
    result = calibrate(plan.target, params, cfg, plan.ist_range, plan.curve_points)
    for note in result.warnings:
        print(f"warning: {note}", file=sys.stderr)
    _write_json(
        {
            "params": params_to_dict(result.params),
            "achieved": metrics_as_dict(result.achieved),
            "stages": result.stages,
            "warnings": list(result.warnings),
        },
        os.path.join(out, "calibrated.json"),
    )
    return 0


def cmd_compare(block, params, cfg, base_dir, out, jobs) -> int:
    if params.kind is not ModelKind.SLIF:
        raise ConfigError("neuron.kind", "compare requires kind 'slif'")
    plan = parse_simulate(block, base_dir)
    twin = params.with_(kind=ModelKind.LIF)
    summary = {"runs": {}}
    for name, train in plan.runs:
        entry = {}
        for label, p in (("slif", params), ("lif", twin)):
            trace = simulate(p, train, plan.horizon, cfg, plan.firing_enabled)
            fname = f"{name}_{label}.csv"
            trace_to_csv(trace, os.path.join(out, fname))
            entry[label] = {
                "trace_csv": fname,
                "peak_amplitude_mV": peak_amplitude(trace, p.v_rest),
                "n_output_spikes": len(trace.output_spikes),
            }
        summary["runs"][name] = entry
    _write_json(summary, os.path.join(out, "summary.json"))
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "ist-sweep": cmd_ist_sweep,
    "grid-sweep": cmd_grid_sweep,
    "calibrate": cmd_calibrate,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slif",
        description="Saturating-synapse LIF neuron simulator and timing-filter toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("simulate", "integrate configured spike trains and write traces"),
        ("ist-sweep", "sample the IST response curve and its metrics"),
        ("grid-sweep", "map metrics over a two-parameter grid"),
        ("calibrate", "fit c_m, g_l, tau_s to timing targets"),
        ("compare", "run each train through the neuron and a LIF twin"),
    ]:
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--config", required=True, help="JSON run configuration")
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads")
        sp.add_argument(
            "--seed", type=int, default=None,
            help="reserved for future stochastic features; currently unused",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("config error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        doc = load_config(args.config)
        params = parse_neuron(doc["neuron"])
        cfg = parse_integrator(doc.get("integrator"))
        base_dir = os.path.dirname(os.path.abspath(args.config))
        os.makedirs(args.out, exist_ok=True)
        return COMMANDS[args.command](
            doc["experiment"], params, cfg, base_dir, args.out, args.jobs
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CalibrationError as exc:
        print(f"calibration infeasible: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

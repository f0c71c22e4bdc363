"""slif-figs: render one figure from a JSON spec."""

from __future__ import annotations

import argparse
import sys

from .io import FigureError
from .render import render
from .spec import load_spec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slif-figs",
        description="Render membrane traces, response curves, or parameter "
                    "heatmaps from slif CSV outputs",
    )
    parser.add_argument("--spec", required=True, help="JSON figure specification")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        out = render(spec)
    except FigureError as exc:
        print(f"figure error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

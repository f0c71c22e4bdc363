"""Figure rendering for slif CSV outputs."""

from .io import (
    FigureError,
    Response,
    SweepGrid,
    Trace,
    load_response,
    load_sweep,
    load_trace,
)
from .render import render
from .spec import FigureSpec, load_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "FigureError",
    "FigureSpec",
    "Response",
    "SweepGrid",
    "Trace",
    "load_response",
    "load_spec",
    "load_sweep",
    "load_trace",
    "parse_spec",
    "render",
    "__version__",
]

"""Input spike train construction and CSV loading."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SpikeTrain:
    """Strictly ascending input arrival times in ms."""

    times: tuple[float, ...]

    def __post_init__(self) -> None:
        for t in self.times:
            if t < 0:
                raise ValueError(f"spike time must be >= 0, got {t}")
        for a, b in zip(self.times, self.times[1:]):
            if b <= a:
                raise ValueError(f"spike times must be strictly ascending: {a} then {b}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.times, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.times)


def pair(t0: float, ist: float) -> SpikeTrain:
    """Two arrivals separated by the given inter-spike timing."""
    if ist <= 0:
        raise ValueError(f"ist must be > 0, got {ist}")
    if t0 < 0:
        raise ValueError(f"t0 must be >= 0, got {t0}")
    return SpikeTrain((t0, t0 + ist))


def periodic(t0: float, period: float, count: int) -> SpikeTrain:
    if period <= 0:
        raise ValueError(f"period must be > 0, got {period}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return SpikeTrain(tuple(t0 + i * period for i in range(count)))


def train_from_csv(path) -> SpikeTrain:
    """Read a one-column CSV (header time_ms) into a SpikeTrain."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["time_ms"]:
            raise ValueError(f"expected a single CSV column 'time_ms' in {path}")
        times = tuple(float(row[0]) for row in reader if row)
    return SpikeTrain(times)

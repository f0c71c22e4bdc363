from pathlib import Path

import pytest

# reference bundles produced by the simulator CLI; regenerate with
# scripts/make_reference_bundles.py from the repository root
DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def traces_dir() -> Path:
    return DATA / "traces"


@pytest.fixture(scope="session")
def response_dir() -> Path:
    return DATA / "response"


@pytest.fixture(scope="session")
def map_dir() -> Path:
    return DATA / "map"


@pytest.fixture
def sweep_3x3(tmp_path) -> Path:
    """Small synthetic map with one error cell in the centre."""
    rows = ["axis1,axis2,favorite_ist_ms,max_amplitude_mV,margin_mV,timewidth_ms,flags"]
    for i, x1 in enumerate((0.1, 0.2, 0.4)):
        for j, x2 in enumerate((1.0, 2.0, 4.0)):
            if (i, j) == (1, 1):
                rows.append(f"{x1},{x2},nan,nan,nan,nan,error:ValueError: blew up")
            else:
                v = 1.0 + i + 10.0 * j
                rows.append(f"{x1},{x2},{v},{v + 1.0},{v / 2.0},{v / 4.0},")
    path = tmp_path / "sweep.csv"
    path.write_text("\n".join(rows) + "\n")
    return path

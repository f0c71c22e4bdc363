import json
from pathlib import Path

import pytest

from slif import NeuronParams, ModelKind
from slif.config import parse_neuron

REPO = Path(__file__).resolve().parents[1]
DATA = REPO / "src" / "slif" / "data"


@pytest.fixture(scope="session")
def pinned_doc() -> dict:
    return json.loads((DATA / "pinned_reference.json").read_text())


@pytest.fixture(scope="session")
def pinned_params(pinned_doc) -> NeuronParams:
    return parse_neuron(pinned_doc["params"])


@pytest.fixture(scope="session")
def reference_params() -> NeuronParams:
    # baseline used by the parameter-trend checks; saturating arrival rule
    return NeuronParams(
        kind=ModelKind.SLIF, c_m=0.1, g_l=0.3, v_th=-52.0, tau_s=4.0, g_max=0.1
    )

import pytest

from qro_app.generators import directed_cycle, transitive_tournament
from qro_app.graph import PartiallyOrientedGraph


@pytest.fixture
def tt3():
    return transitive_tournament(3)


@pytest.fixture
def c4():
    return directed_cycle(4)


@pytest.fixture
def single_arc():
    return PartiallyOrientedGraph.from_arcs(2, [(0, 1)])


@pytest.fixture
def empty4():
    return PartiallyOrientedGraph.empty(4)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "QRO_WORKERS",
        "QRO_EXACT_DISC_LIMIT",
        "QRO_EXACT_BIAS_LIMIT",
        "QRO_DENSE_LIMIT",
        "QRO_FULL_SPECTRUM_LIMIT",
        "QRO_ORACLE_MAX_K",
        "QRO_ORACLE_BUDGET",
        "QRO_ANALYSIS_BUDGET",
        "QRO_POWER_TOL",
        "QRO_POWER_MAX_ITER",
        "QRO_FLOAT_TOL",
        "QRO_RESTARTS",
        "QRO_LOG_FILE",
        "QRO_LOG_LEVEL",
        "QRO_LOG_TO_CONSOLE",
    ):
        monkeypatch.delenv(name, raising=False)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from index3d.cli import fixture_path
from index3d.triangulation import load

KB_EXPR = "-q^(-1/2)*(Z1^-1*Zpp2 + Zpp1*Z2^-1 + Zpp1*Zpp2)"


@pytest.fixture(scope="session")
def fig8():
    return load(fixture_path("fig8.json"))


@pytest.fixture(scope="session")
def fig8_3tet():
    return load(fixture_path("fig8_3tet.json"))


@pytest.fixture
def fig8_doc():
    return {
        "name": "4_1",
        "num_tetrahedra": 2,
        "num_cusps": 1,
        "edge_rows": [[2, 1, 0, 2, 1, 0], [0, 1, 2, 0, 1, 2]],
        "meridian_rows": [[1, 0, 0, 0, 0, -1]],
        "longitude_rows": [[1, 1, 1, 1, -1, -3]],
        "one_efficient": True,
    }


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.RESULTS):
        status, label, detail = test_acceptance.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {label}{detail}")

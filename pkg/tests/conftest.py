import numpy as np
import pytest

from wqwalk.graph import build_graph

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[0]):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {name}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def star():
    """Star with centre 0; the edge to vertex 1 has weight 4."""
    return build_graph(5, [(0, 1, 4.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)])

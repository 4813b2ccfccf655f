import pytest

from dirdom.graph import Graph
from dirdom.rng import SplitMix64

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _MARKS.get(report.nodeid)
    if marker is not None and _CRITERIA.get(marker) != "failed":
        _CRITERIA[marker] = report.outcome


_MARKS = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _MARKS[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), outcome in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if outcome == 'passed' else 'FAIL'}  {title}")


def random_graph(rng, n, p=None):
    p = rng.random() if p is None else p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return SplitMix64(20240607)

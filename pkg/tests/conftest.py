import pytest
from hypothesis import strategies as st

from nodalcoh.curve_model import NodalCurve

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the verdict is printed in the terminal summary."""
    name = request.node.get_closest_marker("criterion").args[0]
    entry = [name, False, ""]

    def note(detail):
        entry[2] = detail

    yield note
    rep = getattr(request.node, "rep_call", None)
    _ACCEPTANCE.append((name, bool(rep and rep.passed), entry[2]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@st.composite
def multigraph_curves(draw, max_vertices=8, max_edges=16, connected=False):
    """Random curves whose dual graphs are multigraphs with loops."""
    m = draw(st.integers(1, max_vertices))
    genera = draw(st.lists(st.integers(0, 3), min_size=m, max_size=m))
    ends = st.integers(0, m - 1)
    edges = draw(st.lists(st.tuples(ends, ends), max_size=max_edges))
    if connected:
        # a random spanning tree first, extra edges after
        tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, m)]
        edges = (tree + edges)[:max(max_edges, m - 1)]
    return NodalCurve.from_genera(genera, edges)


@st.composite
def trees(draw, max_vertices=6, max_genus=3):
    m = draw(st.integers(1, max_vertices))
    genera = draw(st.lists(st.integers(0, max_genus), min_size=m, max_size=m))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, m)]
    return NodalCurve.from_genera(genera, edges)

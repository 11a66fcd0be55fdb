import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from digdef.digraph import Digraph
from digdef.universe import get_universe

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def digraphs(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    return Digraph(n, tuple(rows))


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(list(range(1, n + 1)))))


@pytest.fixture(scope="session")
def u2():
    return get_universe(2)


@pytest.fixture(scope="session")
def u3():
    return get_universe(3)


@pytest.fixture(scope="session")
def u4():
    return get_universe(4)


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture()
def accept():
    """Record one acceptance line; the test still asserts on ``ok`` itself."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE.append((name, ok, detail))
        print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'} {name}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from w4struct.multigraph import Multigraph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# acceptance tests append (criterion, passed, detail); printed at the end of the run
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


@st.composite
def multigraphs(draw, min_n: int = 0, max_n: int = 6, max_m: int = 10, connected: bool = False) -> Multigraph:
    n = draw(st.integers(min_n, max_n))
    edges = []
    if connected:
        for k in range(1, n):
            edges.append((k, draw(st.integers(0, k - 1))))
    if n >= 2:
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
        edges += draw(st.lists(pair, max_size=max(0, max_m - len(edges))))
    return Multigraph(n, tuple(edges))


@st.composite
def permutations_of(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def acceptance():
    def record(num: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append((num, ok, detail))
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    return record

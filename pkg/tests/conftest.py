import numpy as np
import pytest
from hypothesis import strategies as st

from hgauss.expr import parse
from hgauss.harness.randomf import random_functions
from hgauss.surface import GraphSurface

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record_criterion(name: str, passed: bool, detail: str) -> None:
    _ACCEPTANCE.append((name, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name:<4} {detail}")


@pytest.fixture
def random_graphs():
    return [GraphSurface(parse(t)) for t in random_functions(7, 6)]


random_graph = st.integers(0, 5000).map(lambda s: GraphSurface(parse(random_functions(s, 1)[0])))
unit_point = st.tuples(st.floats(-1, 1), st.floats(-1, 1))


def maxabs(a) -> float:
    return float(np.max(np.abs(np.asarray(a, dtype=float))))

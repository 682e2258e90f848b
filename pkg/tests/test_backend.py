import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hgauss import _kernels_py as py
from hgauss._backend import BACKEND
from hgauss.expr import parse
from hgauss.harness.randomf import random_functions

c = pytest.importorskip("hgauss._kernels_c")

TEXTS = ["x*y/2 + ln(y+sqrt(1+y^2)) + y*sqrt(1+y^2)", "coth(x+3)*tanh(y) - (x-y)^3/(2+x^2)",
         "exp(-x*y)*sin(x) + cosh(y)^2.5", "x^0.5*y + 2^x"]


def _tape(text):
    comp = parse(text).compile()
    return comp.ops, comp.arg0, comp.arg1, comp.consts


def test_default_backend_is_compiled():
    assert BACKEND == "cython"


@pytest.mark.parametrize("text", TEXTS + random_functions(11, 6))
def test_tape_parity(text):
    tape = _tape(text)
    rng = np.random.default_rng(0)
    xs, ys = rng.uniform(0.2, 1.5, 20), rng.uniform(-1, 1, 20)
    a, ka, _ = py.eval_tape_many(*tape, xs, ys)
    b, kb, _ = c.eval_tape_many(*tape, xs, ys)
    assert ka == kb == -1
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
    ja, bad_a = py.eval_tape(*tape, 0.7, 0.1)
    jb, bad_b = c.eval_tape(*tape, 0.7, 0.1)
    assert bad_a == bad_b == -1 and np.allclose(ja, jb, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("text,x,y", [("ln(x)", 0.0, 1.0), ("1/(x-y)", 1.0, 1.0), ("coth(y)", 2.0, 0.0)])
def test_domain_errors_agree(text, x, y):
    tape = _tape(text)
    assert py.eval_tape(*tape, x, y)[1] == c.eval_tape(*tape, x, y)[1] >= 0
    xs, ys = np.array([x + 0.5, x]), np.array([y + 0.5, y])
    assert py.eval_tape_many(*tape, xs, ys)[1:] == c.eval_tape_many(*tape, xs, ys)[1:]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=10, max_size=10), st.floats(-2, 2), st.floats(-2, 2))
def test_graph_row_parity(jet, x, y):
    jet = np.array(jet)
    assert np.allclose(py.graph_row(x, y, jet), c.graph_row(x, y, jet), rtol=1e-12, atol=1e-12)


def test_graph_rows_parity():
    rng = np.random.default_rng(1)
    jets = np.ascontiguousarray(rng.uniform(-1, 1, (30, 10)))
    xs, ys = rng.uniform(-2, 2, 30), rng.uniform(-2, 2, 30)
    assert np.allclose(py.graph_rows(xs, ys, jets), c.graph_rows(xs, ys, jets), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("start", [(0.0, 0.0, 1.0, 0.0), (0.5, -1.0, 0.3, 0.7)])
def test_geodesic_parity(start):
    a = py.geodesic_rk4(*start, 1e-2, 200)
    b = c.geodesic_rk4(*start, 1e-2, 200)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)


def test_env_forces_fallback():
    env = dict(os.environ, HGAUSS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import hgauss; print(hgauss.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_benchmark_runs(capsys):
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "benchmarks"))
    try:
        import bench_kernels
    finally:
        sys.path.pop(0)
    assert bench_kernels.main(["--points", "50", "--repeat", "1"]) == 0
    assert "graph_rows" in capsys.readouterr().out

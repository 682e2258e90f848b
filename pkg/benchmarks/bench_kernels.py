"""Compare the compiled and pure-Python kernels on the three hot loops.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from hgauss import _kernels_py as py
from hgauss.expr import parse

SCHERK = "x*y/2 + k*(ln(y+sqrt(1+y^2)) + y*sqrt(1+y^2))"


def _cases(n: int):
    comp = parse(SCHERK, parameters=["k"]).compile({"k": 1.0})
    tape = (comp.ops, comp.arg0, comp.arg1, comp.consts)
    rng = np.random.default_rng(0)
    xs, ys = rng.uniform(-2, 2, n), rng.uniform(-2, 2, n)
    jets = np.ascontiguousarray(comp.jets(xs, ys))
    return {
        "eval_tape_many": lambda k: k.eval_tape_many(*tape, xs, ys),
        "graph_rows": lambda k: k.graph_rows(xs, ys, jets),
        "geodesic_rk4": lambda k: k.geodesic_rk4(0.0, 0.0, 1.0, 0.0, 1e-3, n),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        from hgauss import _kernels_c as c
    except ImportError:
        c = None
        print("compiled kernels unavailable; timing the Python fallback only")
    print(f"{'kernel':<16} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>9}")
    for name, fn in _cases(args.points).items():
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        if c is None:
            print(f"{name:<16} {tp:>12.2f} {'-':>12} {'-':>9}")
            continue
        tc = min(timeit.repeat(lambda: fn(c), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<16} {tp:>12.2f} {tc:>12.3f} {tp / tc:>8.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

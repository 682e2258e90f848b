"""Grid sampling and CSV/JSON export."""
from __future__ import annotations

import csv
import io
import json
from typing import Sequence

import numpy as np

from .. import gans
from .._backend import kernels
from ..expr import EvaluationDomainError
from ..gans import GansPoint
from ..surface import COL, DanielSurface, VerticalSurface, forms_vertical, mean_curvature

GRAPH_FIELDS = ("x", "y", "f", "p", "q", "w", "E", "F", "G", "L", "M", "N", "H",
                "phi_u", "phi_v", "det", "tau1", "tau2")
VERTICAL_FIELDS = ("t", "a", "E", "F", "G", "L", "M", "N", "H")
GEODESIC_FIELDS = ("t", "u", "v", "du", "dv")


class GridError(ValueError):
    pass


def sample_grid(spec, nx: int, ny: int = 2, domain=None) -> tuple[tuple[str, ...], list[dict]]:
    """One row per node, row-major with x (or the native first parameter) fastest.

    Daniel's surface is sampled in (x, s) and gets an extra ``s`` column.
    """
    if nx < 2 or (spec.kind == "graph" and ny < 2):
        raise GridError("nx and ny must be at least 2")
    a, b = spec.grid(nx, ny, domain)
    if isinstance(spec, VerticalSurface):
        rows = []
        for k, t in enumerate(a):
            try:
                fm = forms_vertical(spec, float(t))
                av = spec.profile_jet(float(t))[0]
            except (EvaluationDomainError, ValueError) as exc:
                raise GridError(f"node {k} (t = {t}): {exc}") from exc
            rows.append(dict(zip(VERTICAL_FIELDS, (float(t), av, fm.E, fm.F, fm.G, fm.L, fm.M, fm.N,
                                                   mean_curvature(fm)))))
        return VERTICAL_FIELDS, rows
    try:
        xs, ys, jets = spec.sample(a, b)
    except EvaluationDomainError as exc:
        bad = next(k for k, (x, y) in enumerate(zip(a, b)) if not _ok(spec, x, y))
        raise GridError(f"node {bad} ({a[bad]}, {b[bad]}): {exc}") from exc
    table = kernels.graph_rows(xs, ys, np.ascontiguousarray(jets))
    fields = GRAPH_FIELDS + (("s",) if isinstance(spec, DanielSurface) else ())
    rows = []
    for k in range(len(xs)):
        r = table[k]
        vals = [xs[k], ys[k], jets[k][0]] + [r[COL[n]] for n in GRAPH_FIELDS[3:]]
        if isinstance(spec, DanielSurface):
            vals.append(b[k])
        rows.append(dict(zip(fields, (float(v) for v in vals))))
    return fields, rows


def _ok(spec, x, y) -> bool:
    try:
        spec.sample([x], [y])
        return True
    except EvaluationDomainError:
        return False


def geodesic_rows(start: Sequence[float], direction: Sequence[float], t_max: float, step: float):
    path = gans.geodesic(GansPoint(*start), direction, t_max, step)
    cols = (path.t, path.u, path.v, path.du, path.dv)
    return GEODESIC_FIELDS, [dict(zip(GEODESIC_FIELDS, (float(c[k]) for c in cols))) for k in range(len(path.t))]


def _fmt(v: float) -> str:
    return format(v + 0.0, ".17g")  # no "-0"


def to_csv(fields: Sequence[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_fmt(r[f]) for f in fields])
    return buf.getvalue()


def to_json(fields: Sequence[str], rows: list[dict]) -> str:
    return json.dumps([{f: r[f] for f in fields} for r in rows], indent=1) + "\n"


def write_table(path: str, fields, rows, fmt: str | None = None) -> None:
    """Write CSV (default) or JSON; ``path`` "-" means stdout."""
    fmt = fmt or ("json" if path.endswith(".json") else "csv")
    text = to_json(fields, rows) if fmt == "json" else to_csv(fields, rows)
    if path == "-":
        import sys

        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)

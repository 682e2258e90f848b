"""Command line interface: ``hgauss eval|grid|geodesic|check|catalog``.

Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import gaussmap
from ._backend import BACKEND
from .expr import ExpressionError
from .harness.export import GridError, geodesic_rows, sample_grid, write_table
from .harness.refs import SurfaceRefError, parse_floats, resolve
from .harness.suites import SUITE_NAMES, run_suite
from .surface import CATALOG, DanielSurface, SurfaceError, VerticalSurface, forms_vertical, mean_curvature

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _eval_point(spec, at: tuple[float, ...]) -> dict:
    if isinstance(spec, VerticalSurface):
        t = at[0]
        fm = forms_vertical(spec, t)
        return {"t": t, "a": spec.profile_jet(t)[0], "E": fm.E, "F": fm.F, "G": fm.G,
                "L": fm.L, "M": fm.M, "N": fm.N, "H": mean_curvature(fm)}
    if len(at) != 2:
        raise SurfaceRefError("--at takes x,y for graphs")
    d = spec.point(*at)
    out = {"x": d.x, "y": d.y, "f": d.jet.f}
    for name in ("p", "q", "w", "E", "F", "G", "L", "M", "N", "H", "phi_u", "phi_v", "det"):
        out[name] = d[name]
    tau = gaussmap.tension_field(d)
    r1, r2 = gaussmap.hg_residual(d)
    out.update(tau1=tau.t1, tau2=tau.t2, hg1=r1, hg2=r2)
    if isinstance(spec, DanielSurface):
        out["s"] = spec.s_of_y(d.y)
    return out


def cmd_eval(args) -> int:
    spec = resolve(args.surface)
    vals = _eval_point(spec, parse_floats(args.at, None, "point"))
    if args.json:
        print(json.dumps(vals, indent=1))
    else:
        for k, v in vals.items():
            print(f"{k:>6} = {v:.17g}")
    return EXIT_OK


def cmd_grid(args) -> int:
    spec = resolve(args.surface)
    domain = parse_floats(args.domain, None, "domain") if args.domain else None
    fields, rows = sample_grid(spec, args.nx, args.ny, domain)
    write_table(args.out, fields, rows, args.format)
    return EXIT_OK


def cmd_geodesic(args) -> int:
    fields, rows = geodesic_rows(parse_floats(getattr(args, "from"), 2, "start"),
                                 parse_floats(args.dir, 2, "direction"), args.tmax, args.step)
    write_table(args.out, fields, rows, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    report = run_suite(args.suite, tol=args.tol, seed=args.seed)
    print(report.format())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_catalog(args) -> int:
    for name, (desc, defaults) in CATALOG.items():
        params = ", ".join(f"{k}={v:g}" for k, v in defaults.items()) or "-"
        print(f"{name:<15} {params:<22} {desc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hgauss", description="Surfaces in the Heisenberg group and their Gauss map.")
    ap.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="all point quantities of a surface")
    p.add_argument("--surface", required=True, help="catalog:NAME?k=v or expr:TEXT?k=v&domain=...")
    p.add_argument("--at", required=True, help="x,y for graphs, t for vertical surfaces")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("grid", help="sample a surface on a grid")
    p.add_argument("--surface", required=True)
    p.add_argument("--nx", type=int, default=11)
    p.add_argument("--ny", type=int, default=11)
    p.add_argument("--domain", help="x0,x1,y0,y1 (Daniel: x0,x1,s0,s1; vertical: t0,t1)")
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("geodesic", help="integrate a unit-speed Gans geodesic")
    p.add_argument("--from", required=True, help="u,v")
    p.add_argument("--dir", required=True, help="du,dv")
    p.add_argument("--tmax", type=float, default=2.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITE_NAMES)}")
    p.add_argument("--tol", type=float, help="replace every upper-bound tolerance")
    p.add_argument("--seed", type=int, help="random seed (default: $HGAUSS_SEED or built-in)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("catalog", help="list named example surfaces")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check" and args.suite not in SUITE_NAMES:
        print(f"hgauss: unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (SurfaceRefError, SurfaceError, GridError, ExpressionError, OSError, ValueError) as exc:
        print(f"hgauss: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

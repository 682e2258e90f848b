"""Oracle, check suites, grid sampling and export."""
from .export import sample_grid, to_csv, to_json
from .oracle import fd_jet3, richardson_jet
from .refs import SurfaceRef, parse_ref, resolve
from .suites import SUITE_NAMES, Check, SuiteReport, run_suite

__all__ = [
    "sample_grid", "to_csv", "to_json", "fd_jet3", "richardson_jet", "SurfaceRef",
    "parse_ref", "resolve", "SUITE_NAMES", "Check", "SuiteReport", "run_suite",
]

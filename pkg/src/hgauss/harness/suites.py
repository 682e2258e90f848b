"""Check suites.  Check ids ``C<n>.*`` are the acceptance criteria."""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import gans, gaussmap, heis
from .._backend import BACKEND
from ..expr import parse
from ..gans import GansIsometry, GansPoint
from ..heis import HeisIsometry, HeisPoint
from ..surface import (
    GraphSurface,
    VerticalSurface,
    catalog,
    cmc_vertical_profile,
    forms_graph,
    forms_vertical,
    mean_curvature,
    minimal_residual_graph,
    tangent_basis,
    unit_normal,
    weingarten,
)
from . import oracle
from .randomf import random_functions

DEFAULT_SEED = 20240611
ANALYTIC_TOL = 1e-8
ORACLE_TOL = 1e-5


class UnknownSuiteError(KeyError):
    pass


@dataclass
class Check:
    id: str
    residual: float
    tolerance: float
    kind: str = "max"  # "max": residual <= tol; "min": residual >= tol
    detail: str = ""

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.residual):
            return False
        if self.kind == "min":
            return self.residual >= self.tolerance
        return self.residual <= self.tolerance

    def line(self) -> str:
        op = ">=" if self.kind == "min" else "<="
        tail = f"  {self.detail}" if self.detail else ""
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:<34} residual={self.residual:.3e}  need {op} {self.tolerance:.0e}{tail}"


@dataclass
class SuiteReport:
    name: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def by_prefix(self, prefix: str) -> list[Check]:
        return [c for c in self.checks if c.id.startswith(prefix)]

    def format(self) -> str:
        head = f"suite {self.name}  seed={self.seed}  backend={BACKEND}"
        body = [c.line() for c in self.checks]
        n_fail = len(self.failures())
        tail = f"{self.name}: {'PASS' if self.passed else 'FAIL'}  ({len(self.checks)} checks, {n_fail} failed, {self.seconds:.2f} s)"
        return "\n".join([head, *body, tail])


class _Ctx:
    def __init__(self, seed: int, tol: float | None):
        self.seed = seed
        self.tol = tol
        self.rng = np.random.default_rng(seed)
        self.checks: list[Check] = []

    def add(self, id: str, residual: float, tolerance: float, kind: str = "max", detail: str = "") -> None:
        if self.tol is not None and kind == "max":
            tolerance = self.tol
        self.checks.append(Check(id, float(residual), tolerance, kind, detail))


def _maxabs(values) -> float:
    arr = np.abs(np.asarray(list(values), dtype=float))
    return float(arr.max()) if arr.size else 0.0


def _grid_points(spec, n: int = 5, domain=None):
    return spec.points(*spec.grid(n, n, domain))


# ---------------------------------------------------------------------- gans


def suite_gans(ctx: _Ctx) -> None:
    pts = [GansPoint(*ctx.rng.uniform(-3, 3, size=2)) for _ in range(100)]
    t0 = time.perf_counter()
    err = 0.0
    for p in pts:
        diff = gans.christoffel_at(p).array() - gans.christoffel_from_metric(gans.metric_at, p).array()
        err = max(err, float(np.max(np.abs(diff))))
    elapsed = time.perf_counter() - t0
    ctx.add("C1.christoffel_vs_metric", err, 1e-10, detail="100 random points")
    ctx.add("C1.runtime_s", elapsed, 1.0)

    step = 1e-3
    ode_err = 0.0
    for start, vel in [((0, 0), (1, 0)), ((0, 1), (1, 0)), ((0.5, -0.3), (0.2, 0.9)), ((-1, 2), (-0.7, 0.4))]:
        path = gans.geodesic(GansPoint(*start), vel, 2.0, step)
        for arr in (path.u, path.v):
            second = (arr[2:] - 2 * arr[1:-1] + arr[:-2]) / step**2
            ode_err = max(ode_err, _maxabs(second - arr[1:-1]))
    ctx.add("C2.geodesic_ode", ode_err, 1e-5, detail="u''-u and v''-v on t in [0, 2]")
    path = gans.geodesic(GansPoint(0, 0), (1, 0), 2.0, step)
    sinh_err = max(_maxabs(path.u - np.sinh(path.t)), _maxabs(path.v))
    ctx.add("C2.sinh_solution", sinh_err, 1e-6, detail="origin, direction (1, 0)")

    hyp = gans.geodesic(GansPoint(0, 1), (1, 0), 2.0, step)
    ctx.add("gans.hyperbola_branch", _maxabs(hyp.v**2 - hyp.u**2 - 1), ANALYTIC_TOL)
    ctx.add("gans.unit_speed", _maxabs(hyp.speed() - 1), ANALYTIC_TOL)

    isos = [
        GansIsometry.rotation(0.7),
        GansIsometry.reflection(1.0, -2.0),
        GansIsometry.mobius(0.3 - 0.2j, 0.4),
        GansIsometry.mobius(-0.1 + 0.5j, -1.1, conjugate=True),
    ]
    pull_err, inv_err = 0.0, 0.0
    for iso in isos:
        for p in pts[:10]:
            fmap = lambda u, v: np.array(list(gans.apply_isometry(iso, GansPoint(u, v))))  # noqa: E731
            J = oracle.fd_jacobian2(fmap, p.u, p.v)
            img = gans.apply_isometry(iso, p)
            P = J.T @ gans.metric_at(img).matrix() @ J
            pull_err = max(pull_err, float(np.max(np.abs(P - gans.metric_at(p).matrix()))))
            back = gans.apply_isometry(iso.inverse(), img)
            inv_err = max(inv_err, abs(back.u - p.u) + abs(back.v - p.v))
    ctx.add("gans.isometry_pullback", pull_err, ORACLE_TOL)
    ctx.add("gans.isometry_inverse", inv_err, ANALYTIC_TOL)

    map_err = 0.0
    for p in pts[:20]:
        x, y = gans.gans_to_disk(p)
        q = gans.disk_to_gans(x, y)
        map_err = max(map_err, abs(q.u - p.u) + abs(q.v - p.v))
        # the hemisphere point over F^-1(p) projects to the same point
        r2 = x * x + y * y
        X, Y, Z = 2 * x / (1 + r2), 2 * y / (1 + r2), (1 - r2) / (1 + r2)
        h = gans.hemisphere_to_plane(X, Y, Z)
        map_err = max(map_err, abs(h.u - p.u) + abs(h.v - p.v))
    ctx.add("gans.model_maps", map_err, ANALYTIC_TOL)


# ---------------------------------------------------------------------- heis


def suite_heis(ctx: _Ctx) -> None:
    rnd = lambda: HeisPoint(*ctx.rng.uniform(-2, 2, size=3))  # noqa: E731
    triples = [(rnd(), rnd(), rnd()) for _ in range(50)]
    err = 0.0
    for a, b, c in triples:
        lhs = heis.multiply(heis.multiply(a, b), c).as_array()
        rhs = heis.multiply(a, heis.multiply(b, c)).as_array()
        err = max(err, float(np.max(np.abs(lhs - rhs))))
        err = max(err, float(np.max(np.abs(heis.multiply(a, heis.inverse(a)).as_array()))))
        err = max(err, float(np.max(np.abs(heis.multiply(heis.IDENTITY, a).as_array() - a.as_array()))))
    ctx.add("heis.group_axioms", err, 1e-12)

    err = 0.0
    for a, _, _ in triples:
        g = heis.metric_at(a)
        E = np.array(heis.frame_at(a))
        err = max(err, float(np.max(np.abs(E @ g @ E.T - np.eye(3)))))
    ctx.add("heis.frame_orthonormal", err, 1e-12)

    # left translations and the listed isometries preserve the metric
    isos = [HeisIsometry.rotation(0.9), HeisIsometry.reflection(-0.4),
            HeisIsometry("rotation", 2.0, (1.0, -2.0, 3.0)), HeisIsometry("reflection", 1.3, (0.5, 0.2, -1.0))]
    err = 0.0
    for iso in isos:
        fmap = lambda v: heis.apply_isometry(iso, HeisPoint(*v)).as_array()  # noqa: E731
        for a, _, _ in triples[:10]:
            J = oracle.fd_jacobian3(fmap, a.as_array())
            img = heis.apply_isometry(iso, a)
            err = max(err, float(np.max(np.abs(J.T @ heis.metric_at(img) @ J - heis.metric_at(a)))))
    ctx.add("heis.isometry_pullback", err, ORACLE_TOL)

    # nabla_{E_i} E_j from coordinate Christoffel symbols of ds^2
    err = 0.0
    metric = lambda v: heis.metric_at(HeisPoint(*v))  # noqa: E731
    for a, _, _ in triples[:5]:
        gam = oracle.fd_christoffel3(metric, a.as_array())
        frame = lambda v: np.array(heis.frame_at(HeisPoint(*v)))  # noqa: E731
        dframe = [oracle.fd_jacobian3(lambda v, j=j: frame(v)[j], a.as_array()) for j in range(3)]
        E = frame(a.as_array())
        for i in range(3):
            for j in range(3):
                coord = dframe[j] @ E[i] + np.einsum("bac,a,c->b", gam, E[i], E[j])
                got = heis.to_frame(a, coord).as_array()
                err = max(err, float(np.max(np.abs(got - heis.connection_frame(i + 1, j + 1).as_array()))))
    ctx.add("heis.connection_vs_christoffel", err, ORACLE_TOL)

    err = 0.0
    E = [FV.as_array() for FV in (heis.FrameVector(1, 0, 0), heis.FrameVector(0, 1, 0), heis.FrameVector(0, 0, 1))]
    bracket = {(0, 1): E[2], (1, 0): -E[2]}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                # metric compatibility of the table
                comp = heis.connection_frame(i + 1, j + 1).as_array()[k] + heis.connection_frame(i + 1, k + 1).as_array()[j]
                err = max(err, abs(comp))
            tors = heis.connection_frame(i + 1, j + 1).as_array() - heis.connection_frame(j + 1, i + 1).as_array()
            err = max(err, float(np.max(np.abs(tors - bracket.get((i, j), np.zeros(3))))))
    ctx.add("heis.metric_compatible_torsion_free", err, 1e-12)


# --------------------------------------------------------------------- forms


def _random_graphs(ctx: _Ctx, n: int) -> list[GraphSurface]:
    texts = random_functions(ctx.seed, n)
    return [GraphSurface(parse(t), name=f"random{k}") for k, t in enumerate(texts)]


def suite_forms(ctx: _Ctx) -> None:
    graphs = _random_graphs(ctx, 5)
    det_err = hec_err = wein_err = wein_fd_err = 0.0
    for spec in graphs + [catalog("scherk"), catalog("plane")]:
        for d in _grid_points(spec, 4, (-1, 1, -1, 1)):
            fm = forms_graph(d)
            det_err = max(det_err, abs(fm.detI - d.w**2) / d.w**2)
            hec_err = max(hec_err, abs(minimal_residual_graph(d) / (2 * d.w**3) - mean_curvature(fm)))
            Xx, Xy = tangent_basis(d)
            A = [weingarten(d, (1, 0)), weingarten(d, (0, 1))]
            got = np.array([[A[0].dot(Xx), A[0].dot(Xy)], [A[1].dot(Xx), A[1].dot(Xy)]])
            wein_err = max(wein_err, float(np.max(np.abs(got - fm.second()))))
            wein_fd_err = max(wein_fd_err, _weingarten_fd_error(spec, d, fm))
    ctx.add("forms.detI_equals_w2", det_err, 1e-12)
    ctx.add("forms.mean_curvature_vs_residual", hec_err, 1e-10)
    ctx.add("forms.weingarten_analytic", wein_err, ANALYTIC_TOL)
    ctx.add("forms.weingarten_fd", wein_fd_err, ANALYTIC_TOL, detail="normal field differenced")

    vert_err = 0.0
    for text in ("t^2", "sin(t) + t/3", "(1 - 2*t)/3", "exp(t/2)"):
        v = VerticalSurface(parse(text, ("t",)))
        for t in np.linspace(0.1, 2.0, 9):
            _, ad, _ = v.profile_jet(t)
            vert_err = max(vert_err, abs(forms_vertical(v, t).detI - (1 + ad * ad)))
    ctx.add("forms.vertical_detI", vert_err, 1e-12)

    # frame components of the sphere-valued Gauss map, differenced, against -(A v + nabla_v eta_bar)
    ripoll_err = 0.0
    for spec in [catalog("plane"), catalog("plane", {"a": -0.3, "b": 0.8, "c": 2})] + graphs[::2]:
        for d in _grid_points(spec, 3, (-1, 1, -1, 1)):
            for v in [(1.0, 0.0), (0.0, 1.0), (0.6, -0.8)]:
                def gamma(t, d=d, v=v, spec=spec):
                    return unit_normal(spec.point(d.x + t * v[0], d.y + t * v[1])).as_array()

                lhs = (8 * (gamma(1e-3) - gamma(-1e-3)) - (gamma(2e-3) - gamma(-2e-3))) / 12e-3
                rhs = gaussmap.ripoll_rhs(d, v).as_array()
                ripoll_err = max(ripoll_err, float(np.max(np.abs(lhs - rhs))))
    ctx.add("C11.ripoll_identity", ripoll_err, ORACLE_TOL)


def _weingarten_fd_error(spec, d, fm) -> float:
    h = 1e-3

    def eta(x, y):
        return unit_normal(spec.point(x, y)).as_array()

    def field(x, y):
        ex = (8 * (eta(x + h, y) - eta(x - h, y)) - (eta(x + 2 * h, y) - eta(x - 2 * h, y))) / (12 * h)
        ey = (8 * (eta(x, y + h) - eta(x, y - h)) - (eta(x, y + 2 * h) - eta(x, y - 2 * h))) / (12 * h)
        return eta(x, y), ex, ey

    Xx, Xy = tangent_basis(d)
    A = [-heis.covariant_derivative(field, (d.x, d.y), X) for X in (Xx, Xy)]
    got = np.array([[A[0].dot(Xx), A[0].dot(Xy)], [A[1].dot(Xx), A[1].dot(Xy)]])
    return float(np.max(np.abs(got - fm.second())))


# ------------------------------------------------------------------- minimal


def _minimal_graphs():
    specs = [catalog("plane"), catalog("plane", {"a": -2.5, "b": 0.7, "c": 1.0})]
    specs += [catalog("scherk", {"k": k}) for k in (0.5, 1.0, 2.0)]
    specs += [catalog("rank1", {"k": 0.7, "c": -1.0}), catalog("daniel")]
    return specs


def suite_minimal(ctx: _Ctx) -> None:
    for spec in _minimal_graphs():
        label = _label(spec)
        pts = _grid_points(spec, 5)
        ctx.add(f"C3.H.{label}", _maxabs(mean_curvature(forms_graph(d)) for d in pts), ANALYTIC_TOL,
                detail=f"{len(pts)} points")
        ctx.add(f"C4.tension.{label}", _maxabs(gaussmap.tension_field(d).norm() for d in pts), ANALYTIC_TOL)
        ctx.add(f"minimal.kernel_tension.{label}", _maxabs(abs(d["tau1"]) + abs(d["tau2"]) for d in pts), ANALYTIC_TOL)
    vp = catalog("vertical_plane")
    ts = np.linspace(*vp.interval, 25)
    ctx.add("C3.H.vertical_plane", _maxabs(mean_curvature(forms_vertical(vp, t)) for t in ts), 1e-12)
    vp2 = catalog("vertical_plane", {"A": 2.0, "B": -0.5, "C": 1.0})
    ctx.add("C3.H.vertical_plane_2", _maxabs(mean_curvature(forms_vertical(vp2, t)) for t in ts), 1e-12)

    daniel = catalog("daniel")
    err = 0.0
    for x, s in [(0.7, 0.5), (-1.2, 1.0), (1.5, 2.0)]:
        d = daniel.point_s(x, s)
        fd = oracle.richardson_jet(daniel.height, d.x, d.y, 1e-2)
        err = max(err, float(np.max(np.abs(fd.as_array() - d.jet.as_array()))))
    ctx.add("minimal.daniel_jet_vs_fd", err, ORACLE_TOL, detail="chain rule through y(s)")

    plane = catalog("plane").point(0.3, -0.8)
    ctx.add("C7.det.plane", abs(gaussmap.gauss_det(plane) - 0.25), 0.0, detail="exact")
    rk = 0.0
    for k in (0.0, 0.5, -1.5):
        spec = catalog("rank1", {"k": k, "c": 0.0})
        rk = max(rk, _maxabs(gaussmap.gauss_det(d) for d in _grid_points(spec, 3)))
    ctx.add("C7.det.rank1", rk, 0.0, detail="exact")
    de = max(abs(gaussmap.gauss_det(daniel.point_s(0.8, s)) + 0.25 * (math.tanh(s) ** 4 - 1)) for s in (0.5, 1.0, 2.0))
    ctx.add("C7.det.daniel", de, 1e-10)

    # rank-1 images lie on a line through the origin
    line_err, axes = 0.0, set()
    for k, c in [(0.0, 0.0), (0.5, 1.0), (-1.5, -2.0)]:
        spec = catalog("rank1", {"k": k, "c": c})
        uv = np.array([list(gaussmap.gauss_map(d)) for d in _grid_points(spec, 5)])
        _, _, vt = np.linalg.svd(uv, full_matrices=False)
        normal = vt[-1]
        line_err = max(line_err, _maxabs(uv @ normal))
        axes.add("v = 0" if abs(normal[0]) < 1e-12 else f"{normal[0]:.3g} u + {normal[1]:.3g} v = 0")
    ctx.add("C8.rank1_origin_line", line_err, 1e-10, detail="image " + ", ".join(sorted(axes)))

    for k in (0.5, 1.0, 2.0):
        spec = catalog("scherk", {"k": k})
        uv = np.array([list(gaussmap.gauss_map(d)) for d in _grid_points(spec, 5)])
        u, v = uv[:, 0], uv[:, 1]
        M = np.column_stack([u**2, np.ones_like(u)])
        (alpha, beta), *_ = np.linalg.lstsq(M, v**2, rcond=None)
        fit = _maxabs(v**2 - alpha * u**2 - beta)
        halves = [np.linalg.lstsq(M[s], (v**2)[s], rcond=None)[0] for s in (slice(0, None, 2), slice(1, None, 2))]
        spread = float(np.max(np.abs(halves[0] - halves[1])))
        branch = 0.0 if (np.all(v > 0) or np.all(v < 0)) else 1.0
        note = f"alpha={alpha:.12g} beta={beta:.12g} (4k^2={4 * k * k:g})"
        ctx.add(f"C8.scherk_hyperbola_fit.k={k:g}", max(fit, spread), 1e-9, detail=note)
        ctx.add(f"C8.scherk_beta_positive.k={k:g}", beta, 0.0, kind="min")
        ctx.add(f"C8.scherk_single_branch.k={k:g}", branch, 0.0)


def _label(spec) -> str:
    params = ",".join(f"{k}={v:g}" for k, v in spec.params.items())
    return f"{spec.name}({params})" if params else spec.name


# ------------------------------------------------------------------- tension


def _hg_points():
    X, Y = np.meshgrid(np.linspace(-1, 1, 5), np.linspace(-1, 1, 5))
    return list(zip(X.ravel(), Y.ravel()))


def suite_tension(ctx: _Ctx) -> None:
    graphs = _random_graphs(ctx, 5)
    pts = _hg_points()
    hg = hg_fd = app = tau_fd = lap_fd = kern = 0.0
    sign_pts = pts[::6]
    for spec in graphs:
        data = spec.points([p[0] for p in pts], [p[1] for p in pts])
        for d in data:
            hg = max(hg, _maxabs(gaussmap.hg_residual(d)))
            app = max(app, _maxabs(gaussmap.appendix_numerator_check(d)))
            tau = gaussmap.tension_field(d)
            kern = max(kern, abs(tau.t1 - d["tau1"]), abs(tau.t2 - d["tau2"]), abs(d["hg1"]) + abs(d["hg2"]))
        for d in data:
            hg_fd = max(hg_fd, _maxabs(oracle.fd_hg_residual(spec.height, d.x, d.y)))
            tau_fd = max(tau_fd, _maxabs(oracle.fd_tension(spec.height, d.x, d.y) - np.array(list(gaussmap.tension_field(d)))))
            lap = np.array([gaussmap.laplace_beltrami(1, d), gaussmap.laplace_beltrami(2, d)])
            lap_fd = max(lap_fd, _maxabs(oracle.fd_laplacian(spec.height, d.x, d.y) - lap))
    detail = f"{len(graphs)} random f, 5x5 grid on [-1,1]^2"
    ctx.add("C5.hg_analytic", hg, 1e-6, detail=detail)
    ctx.add("C5.hg_fd_oracle", hg_fd, 1e-4, detail="every ingredient by differences")
    ctx.add("C6.appendix_numerators", app, 1e-6, detail=detail)

    sign, res = oracle.calibrate_appendix_sign(
        graphs[0].height, sign_pts, lambda x, y: gaussmap.appendix_numerators(graphs[0].point(x, y)))
    ctx.add("C6.sign_calibration", 0.0 if sign == gaussmap.APPENDIX_SIGN else 1.0, 0.0,
            detail=f"oracle sign {sign:+g}, frozen {gaussmap.APPENDIX_SIGN:+g}, residual {res:.1e}")
    ctx.add("tension.analytic_vs_fd", tau_fd, ORACLE_TOL)
    ctx.add("tension.laplacian_vs_fd", lap_fd, ORACLE_TOL)
    ctx.add("tension.python_vs_kernel", kern, ANALYTIC_TOL)

    flat = GraphSurface(parse("0")).point(0.0, 0.0)
    ctx.add("tension.flat_laplacian", abs(gaussmap.laplace_beltrami(1, flat)), 1e-12)


# -------------------------------------------------------------- equivariance


def suite_equivariance(ctx: _Ctx) -> None:
    specs = [catalog("plane"), catalog("scherk", {"k": 1.0})]
    isos = []
    for th in (math.pi / 6, math.pi / 2):
        isos += [("rotation", HeisIsometry.rotation(th)), ("reflection", HeisIsometry.reflection(th))]
    isos.append(("translation", HeisIsometry.translation_by(1.0, -2.0, 3.0)))
    samples = [(0.3, 0.7), (-1.1, 0.4), (1.5, -1.2), (0.0, 0.0), (-0.6, -1.8)]
    for spec in specs:
        for kind, iso in isos:
            new = gaussmap.equivariant_graph(spec, iso)
            M = gaussmap.gauss_transform(iso)
            err = 0.0
            for x, y in samples:
                P = heis.apply_isometry(iso, HeisPoint(x, y, spec.height(x, y)))
                d_new = new.point(P.x, P.y)
                err = max(err, abs(new.height(P.x, P.y) - P.z))
                err = max(err, _maxabs(np.array(list(gaussmap.gauss_map(d_new))) - M @ np.array(list(gaussmap.gauss_map(spec.point(x, y))))))
            ctx.add(f"C9.{kind}.{_label(spec)}.theta={iso.theta:.4f}", err, 1e-10)
        for th in (math.pi / 6, math.pi / 2):
            sign, res = oracle.calibrate_reflection_sign(spec.height, HeisIsometry.reflection(th), samples[:3])
            ctx.add(f"C9.reflection_sign.{_label(spec)}.theta={th:.4f}",
                    0.0 if sign == gaussmap.REFLECTION_SIGN else 1.0, 0.0,
                    detail=f"oracle sign {sign:+g}, frozen {gaussmap.REFLECTION_SIGN:+g}, residual {res:.1e}")


# ----------------------------------------------------------------- conformal


def suite_conformal(ctx: _Ctx) -> None:
    defect = lam_err = 0.0
    for a, b, c in [(1, 2, 0), (0, 0, 0), (-0.5, 3, 1), (2, -1, -4)]:
        spec = catalog("plane", {"a": a, "b": b, "c": c})
        for d in _grid_points(spec, 4):
            dfc, lam = gaussmap.conformality(d)
            defect = max(defect, dfc)
            lam_err = max(lam_err, abs(lam - 1 / (4 * d.w**2)))
    ctx.add("C10.plane_defect", defect, 1e-10)
    ctx.add("C10.plane_lambda", lam_err, ANALYTIC_TOL, detail="lambda = 1/(4 w^2)")
    d = catalog("scherk", {"k": 1.0}).point(0.0, 1.0)
    ctx.add("C10.scherk_not_conformal", gaussmap.conformality_defect(d), 1e-3, kind="min")


# ----------------------------------------------------------------------- cmc


def suite_cmc(ctx: _Ctx) -> None:
    H = -0.5
    spec = catalog("cmc_vertical", {"H": H})
    ts = np.linspace(*spec.interval, 50)
    absH = np.array([abs(mean_curvature(forms_vertical(spec, t))) for t in ts])
    ctx.add("C12.cmc_profile_constant_H", float(absH.max() - absH.min()), 1e-6,
            detail=f"|H| ranges {absH.min():.4g}..{absH.max():.4g} on t in [{ts[0]:.3g}, {ts[-1]:.3g}]")
    prof = max(abs(spec.profile_jet(t)[0] - cmc_vertical_profile(H, t)) for t in ts)
    ctx.add("cmc.profile_expression_matches", prof, 1e-12)
    circle = VerticalSurface(parse("sqrt(1 - t^2)", ("t",)), interval=(-0.9, 0.9))
    cH = np.array([abs(mean_curvature(forms_vertical(circle, t))) for t in np.linspace(-0.9, 0.9, 50)])
    ctx.add("cmc.unit_circle_profile", float(np.max(np.abs(cH - 0.5))), ANALYTIC_TOL, detail="|H| = 1/2")


SUITES: dict[str, Callable[[_Ctx], None]] = {
    "gans": suite_gans,
    "heis": suite_heis,
    "forms": suite_forms,
    "minimal": suite_minimal,
    "tension": suite_tension,
    "equivariance": suite_equivariance,
    "conformal": suite_conformal,
    "cmc": suite_cmc,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get("HGAUSS_SEED")
    return int(env) if env else DEFAULT_SEED


def run_suite(name: str, tol: float | None = None, seed: int | None = None) -> SuiteReport:
    """Run a suite; ``tol`` replaces every upper-bound tolerance."""
    if name not in SUITE_NAMES:
        raise UnknownSuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    ctx = _Ctx(resolve_seed(seed), tol)
    t0 = time.perf_counter()
    for key in (SUITES if name == "all" else (name,)):
        ctx.rng = np.random.default_rng(ctx.seed)
        SUITES[key](ctx)
    return SuiteReport(name, ctx.seed, ctx.checks, time.perf_counter() - t0)

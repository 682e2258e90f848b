"""Surfaces in H3: graphs z = f(x, y) and vertical surfaces (t, a(t), s).

For a graph, with p = f_x + y/2, q = f_y - x/2 and w = sqrt(1 + p^2 + q^2):

    X_x = E1 + p E3,  X_y = E2 + q E3,  eta = (-p E1 - q E2 + E3) / w
    E = 1 + p^2,  F = p q,  G = 1 + q^2
    L = (f_xx + p q) / w,  M = (f_xy + (q^2 - p^2) / 2) / w,  N = (f_yy - p q) / w
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np
from scipy.optimize import brentq

from . import heis
from ._backend import kernels
from .expr import CompiledExpression, Expression, Jet3, parse
from .heis import FrameVector

ROW_FIELDS = (
    "p", "q", "w", "E", "F", "G", "L", "M", "N", "H", "phi_u", "phi_v", "det",
    "lap1", "lap2", "tau1", "tau2", "H_x", "H_y", "w_x", "w_y",
    "hg1", "hg2", "lhs1", "lhs2", "T1", "T2",
)
COL = {name: i for i, name in enumerate(ROW_FIELDS)}

DEFAULT_GRAPH_DOMAIN = (-2.0, 2.0, -2.0, 2.0)
DEFAULT_VERTICAL_INTERVAL = (0.1, 2.0)


class SurfaceError(ValueError):
    pass


class DegenerateFormsError(SurfaceError):
    pass


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float

    @property
    def detI(self) -> float:
        return self.E * self.G - self.F * self.F

    def first(self) -> np.ndarray:
        return np.array([[self.E, self.F], [self.F, self.G]])

    def second(self) -> np.ndarray:
        return np.array([[self.L, self.M], [self.M, self.N]])


@dataclass(frozen=True)
class GraphPointData:
    """Per-point bundle of a graph surface."""

    x: float
    y: float
    jet: Jet3

    @property
    def p(self) -> float:
        return self.jet.f_x + 0.5 * self.y

    @property
    def q(self) -> float:
        return self.jet.f_y - 0.5 * self.x

    @property
    def w(self) -> float:
        return math.sqrt(1.0 + self.p**2 + self.q**2)

    @cached_property
    def row(self) -> np.ndarray:
        """All derived quantities from the kernel, indexed by ``COL``."""
        return kernels.graph_row(float(self.x), float(self.y), self.jet.as_array())

    def __getitem__(self, name: str) -> float:
        return float(self.row[COL[name]])


# ------------------------------------------------------------------ specs


@dataclass(frozen=True)
class GraphSurface:
    """Graph of ``expression`` over the rectangle ``domain`` = (x0, x1, y0, y1)."""

    expression: Expression
    params: Mapping[str, float] = field(default_factory=dict)
    domain: tuple[float, float, float, float] = DEFAULT_GRAPH_DOMAIN
    name: str = ""

    kind = "graph"

    @cached_property
    def compiled(self) -> CompiledExpression:
        return self.expression.compile(dict(self.params))

    def height(self, x: float, y: float) -> float:
        return self.compiled.value(x, y)

    def jet(self, x: float, y: float) -> Jet3:
        return self.compiled.jet(x, y)

    def point(self, x: float, y: float) -> GraphPointData:
        return GraphPointData(float(x), float(y), self.jet(x, y))

    def grid(self, nx: int, ny: int, domain=None) -> tuple[np.ndarray, np.ndarray]:
        """Grid node parameters in row-major order (y outer, x inner)."""
        x0, x1, y0, y1 = domain or self.domain
        X, Y = np.meshgrid(np.linspace(x0, x1, nx), np.linspace(y0, y1, ny))
        return X.ravel(), Y.ravel()

    def sample(self, a, b) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(xs, ys, jets) at native parameters; for graphs these are (x, y)."""
        xs = np.ascontiguousarray(a, dtype=float)
        ys = np.ascontiguousarray(b, dtype=float)
        return xs, ys, self.compiled.jets(xs, ys)

    def points(self, a, b) -> list[GraphPointData]:
        xs, ys, jets = self.sample(a, b)
        return [GraphPointData(float(x), float(y), Jet3.from_array(j)) for x, y, j in zip(xs, ys, jets)]

    def describe(self) -> str:
        return f"z = {self.expression}"


_DANIEL_H = parse("s - tanh(s)/2", variables=("s",))
_DANIEL_Y = parse("coth(s) - 2*s", variables=("s",))


@dataclass(frozen=True)
class DanielSurface:
    """f(x, y) = x h(y) with h = s - tanh(s)/2 and y = coth(s) - 2s, s > 0.

    Native parameters are (x, s).  Derivatives of h in y come from the
    s-jets of h and y through the inverse-function chain rule.
    """

    domain: tuple[float, float, float, float] = (-2.0, 2.0, 0.2, 3.0)
    name: str = "daniel"
    params: Mapping[str, float] = field(default_factory=dict)

    kind = "graph"

    @cached_property
    def _h(self) -> CompiledExpression:
        return _DANIEL_H.compile()

    @cached_property
    def _y(self) -> CompiledExpression:
        return _DANIEL_Y.compile()

    def y_of_s(self, s: float) -> float:
        return self._y.value(s)

    def s_of_y(self, y: float) -> float:
        """Invert y(s); y is strictly decreasing from +inf (s -> 0) to -inf."""
        lo, hi = 1e-3, 1.0
        while self.y_of_s(lo) < y:
            lo /= 10.0
        while self.y_of_s(hi) > y:
            hi *= 2.0
        return brentq(lambda s: self.y_of_s(s) - y, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)

    def h_derivatives(self, s: float) -> tuple[float, float, float, float, float]:
        """(y, h, h_y, h_yy, h_yyy) at parameter s."""
        hj = self._h.jet_array(s)
        yj = self._y.jet_array(s)
        y, y1, y2, y3 = yj[0], yj[1], yj[3], yj[6]
        h, h1, h2, h3 = hj[0], hj[1], hj[3], hj[6]
        hy = h1 / y1
        num = h2 * y1 - h1 * y2
        hyy = num / y1**3
        num_s = h3 * y1 - h1 * y3
        hyyy = (num_s * y1 - 3.0 * num * y2) / y1**5
        return y, h, hy, hyy, hyyy

    def jet_s(self, x: float, s: float) -> tuple[float, Jet3]:
        y, h, hy, hyy, hyyy = self.h_derivatives(s)
        return y, Jet3(x * h, h, x * hy, 0.0, hy, x * hyy, 0.0, 0.0, hyy, x * hyyy)

    def height(self, x: float, y: float) -> float:
        return x * self._h.value(self.s_of_y(y))

    def jet(self, x: float, y: float) -> Jet3:
        return self.jet_s(x, self.s_of_y(y))[1]

    def point(self, x: float, y: float) -> GraphPointData:
        return GraphPointData(float(x), float(y), self.jet(x, y))

    def point_s(self, x: float, s: float) -> GraphPointData:
        y, jet = self.jet_s(x, s)
        return GraphPointData(float(x), float(y), jet)

    def grid(self, nx: int, ny: int, domain=None):
        x0, x1, s0, s1 = domain or self.domain
        X, S = np.meshgrid(np.linspace(x0, x1, nx), np.linspace(s0, s1, ny))
        return X.ravel(), S.ravel()

    def sample(self, a, b):
        xs = np.ascontiguousarray(a, dtype=float)
        ys = np.empty_like(xs)
        jets = np.empty((len(xs), 10))
        for k, (x, s) in enumerate(zip(xs, b)):
            ys[k], jet = self.jet_s(float(x), float(s))
            jets[k] = jet.as_array()
        return xs, ys, jets

    def points(self, a, b) -> list[GraphPointData]:
        return [self.point_s(float(x), float(s)) for x, s in zip(a, b)]

    def describe(self) -> str:
        return "z = x h(y), h = s - tanh(s)/2, y = coth(s) - 2s"


@dataclass(frozen=True)
class VerticalSurface:
    """X(t, s) = (t, a(t), s) for a profile expression a in the variable t."""

    profile: Expression
    params: Mapping[str, float] = field(default_factory=dict)
    interval: tuple[float, float] = DEFAULT_VERTICAL_INTERVAL
    name: str = ""

    kind = "vertical"

    @cached_property
    def compiled(self) -> CompiledExpression:
        return self.profile.compile(dict(self.params))

    def profile_jet(self, t: float) -> tuple[float, float, float]:
        j = self.compiled.jet_array(t)
        return float(j[0]), float(j[1]), float(j[3])

    def unit_normal(self, t: float) -> FrameVector:
        _, ad, _ = self.profile_jet(t)
        r = math.sqrt(1.0 + ad * ad)
        return FrameVector(ad / r, -1.0 / r, 0.0)

    def grid(self, nx: int, ny: int = 1, domain=None):
        t0, t1 = (domain or self.interval)[:2]
        return np.linspace(t0, t1, nx), np.zeros(nx)

    def describe(self) -> str:
        return f"(t, a(t), s), a = {self.profile}"


SurfaceSpec = GraphSurface | DanielSurface | VerticalSurface


# ------------------------------------------------------------- operations


def graph_point(spec, x: float, y: float) -> GraphPointData:
    if spec.kind != "graph":
        raise SurfaceError("graph_point needs a graph surface")
    return spec.point(x, y)


def unit_normal(d: GraphPointData) -> FrameVector:
    p, q, w = d.p, d.q, d.w
    return FrameVector(-p / w, -q / w, 1.0 / w)


def tangent_basis(d: GraphPointData) -> tuple[FrameVector, FrameVector]:
    """X_x and X_y in frame components."""
    return FrameVector(1.0, 0.0, d.p), FrameVector(0.0, 1.0, d.q)


def forms_graph(d: GraphPointData) -> FundamentalForms:
    p, q, w = d.p, d.q, d.w
    j = d.jet
    return FundamentalForms(
        1.0 + p * p,
        p * q,
        1.0 + q * q,
        (j.f_xx + q * p) / w,
        (j.f_xy + 0.5 * q * q - 0.5 * p * p) / w,
        (j.f_yy - q * p) / w,
    )


def forms_vertical(spec: VerticalSurface, t: float) -> FundamentalForms:
    a, ad, add = spec.profile_jet(t)
    r = a - t * ad
    s = math.sqrt(1.0 + ad * ad)
    return FundamentalForms(
        1.0 + ad * ad + 0.25 * r * r,
        0.5 * r,
        1.0,
        (r * (1.0 + ad * ad) - 2.0 * add) / (2.0 * s),
        0.5 * s,
        0.0,
    )


def mean_curvature(forms: FundamentalForms) -> float:
    det = forms.detI
    if not det > 0:
        raise DegenerateFormsError(f"first fundamental form is degenerate (det = {det})")
    return 0.5 * (forms.E * forms.N + forms.G * forms.L - 2.0 * forms.F * forms.M) / det


def minimal_residual_graph(d: GraphPointData) -> float:
    """(1 + q^2) f_xx - 2 p q f_xy + (1 + p^2) f_yy, which equals 2 H w^3."""
    p, q, j = d.p, d.q, d.jet
    return (1.0 + q * q) * j.f_xx - 2.0 * p * q * j.f_xy + (1.0 + p * p) * j.f_yy


def cmc_admissible_interval(H: float) -> tuple[float, float]:
    """Open t-interval on which the vertical CMC profile is defined."""
    if H == 0:
        raise SurfaceError("H must be non-zero")
    edge = -1.0 / (2.0 * H)
    return (0.0, edge) if H < 0 else (edge, 0.0)


def cmc_vertical_profile(H: float, t: float) -> float:
    """a(t) = t sqrt(-2Ht / (1 + 2Ht))."""
    den = 1.0 + 2.0 * H * t
    if den == 0:
        raise SurfaceError(f"profile undefined at t = {t} (1 + 2Ht = 0)")
    r = -2.0 * H * t / den
    if r < 0:
        raise SurfaceError(f"t = {t} outside the admissible interval for H = {H}")
    return t * math.sqrt(r)


def normal_field(d: GraphPointData):
    """The unit normal as a frame field with its x- and y-derivatives at d."""
    p, q, w = d.p, d.q, d.w
    j = d.jet
    px, py = j.f_xx, j.f_xy + 0.5
    qx, qy = j.f_xy - 0.5, j.f_yy
    wx = (p * px + q * qx) / w
    wy = (p * py + q * qy) / w
    eta = (-p / w, -q / w, 1.0 / w)
    eta_x = (-(px * w - p * wx) / w**2, -(qx * w - q * wx) / w**2, -wx / w**2)
    eta_y = (-(py * w - p * wy) / w**2, -(qy * w - q * wy) / w**2, -wy / w**2)

    def field(x, y):
        return eta, eta_x, eta_y

    return field


def weingarten(d: GraphPointData, v) -> FrameVector:
    """A_eta v = -nabla_v eta for v = v[0] X_x + v[1] X_y."""
    Xx, Xy = tangent_basis(d)
    direction = v[0] * Xx + v[1] * Xy
    return -heis.covariant_derivative(normal_field(d), (d.x, d.y), direction)


# ---------------------------------------------------------------- catalog

CATALOG = {
    "plane": ("plane z = a x + b y + c (minimal)", {"a": 1.0, "b": 2.0, "c": 0.0}),
    "scherk": ("Scherk-type saddle xy/2 + k[asinh y + y sqrt(1+y^2)] (minimal)", {"k": 1.0}),
    "rank1": ("xy/2 + k x + c, minimal with Gauss map of rank 1", {"k": 0.0, "c": 0.0}),
    "daniel": ("Daniel's minimal graph x h(y), parameterized by (x, s)", {}),
    "paraboloid": ("(x^2 + y^2)/2 (not minimal)", {}),
    "vertical_plane": ("vertical plane A x + B y = C", {"A": 1.0, "B": 1.0, "C": 0.0}),
    "cmc_vertical": ("vertical surface with profile t sqrt(-2Ht/(1+2Ht))", {"H": -0.5}),
}

_GRAPH_TEXT = {
    "plane": "a*x + b*y + c",
    "scherk": "x*y/2 + k*(ln(y + sqrt(1 + y^2)) + y*sqrt(1 + y^2))",
    "rank1": "x*y/2 + k*x + c",
    "paraboloid": "(x^2 + y^2)/2",
}


def catalog(name: str, params: Mapping[str, float] | None = None, domain=None):
    """Surface spec for a named example; missing params take defaults."""
    if name not in CATALOG:
        raise SurfaceError(f"unknown catalog surface {name!r}; choose from {', '.join(CATALOG)}")
    defaults = CATALOG[name][1]
    given = dict(params or {})
    unknown = set(given) - set(defaults)
    if unknown:
        raise SurfaceError(f"unknown parameter(s) for {name}: {', '.join(sorted(unknown))}")
    values = {**defaults, **{k: float(v) for k, v in given.items()}}
    if name in _GRAPH_TEXT:
        e = parse(_GRAPH_TEXT[name], ("x", "y"), tuple(defaults))
        return GraphSurface(e, values, tuple(domain) if domain else DEFAULT_GRAPH_DOMAIN, name)
    if name == "daniel":
        return DanielSurface(tuple(domain)) if domain else DanielSurface()
    if name == "vertical_plane":
        if values["B"] == 0:
            raise SurfaceError("B = 0 gives x = const, which is not of the form (t, a(t), s)")
        e = parse("(C - A*t)/B", ("t",), ("A", "B", "C"))
        return VerticalSurface(e, values, tuple(domain) if domain else DEFAULT_VERTICAL_INTERVAL, name)
    H = values["H"]
    lo, hi = cmc_admissible_interval(H)
    span = hi - lo
    interval = tuple(domain) if domain else (lo + 0.05 * span, hi - 0.05 * span)
    e = parse("t*sqrt(-2*H*t/(1 + 2*H*t))", ("t",), ("H",))
    return VerticalSurface(e, values, interval, name)

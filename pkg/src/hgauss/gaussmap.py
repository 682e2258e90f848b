"""The Gauss map of a graph into the Gans model and its tension field.

phi(x, y) = (-p, -q).  Everything here is evaluated from the order-3 jet of
f in plain Python; the compiled kernel row of ``GraphPointData`` is a
second, independent route used for grids and cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gans, heis
from .expr import Binary, Num, Unary, Var, const
from .gans import GansPoint
from .heis import FrameVector, HeisIsometry
from .surface import (
    DegenerateFormsError,
    GraphPointData,
    GraphSurface,
    SurfaceError,
    forms_graph,
    tangent_basis,
    unit_normal,
    weingarten,
)

# tau + d(2Hw) = APPENDIX_SIGN * T / (32 w^4), T the closed numerators
APPENDIX_SIGN = 1.0
# a reflection isometry acts on the Gauss map as REFLECTION_SIGN * [[c, s], [s, -c]]
REFLECTION_SIGN = -1.0


@dataclass(frozen=True)
class TensionValue:
    t1: float
    t2: float

    def __iter__(self):
        yield self.t1
        yield self.t2

    def norm(self) -> float:
        return math.hypot(self.t1, self.t2)


@dataclass(frozen=True)
class Jacobian2:
    """d phi; rows are phi^1, phi^2, columns d/dx, d/dy."""

    a11: float
    a12: float
    a21: float
    a22: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21


def gauss_map(d: GraphPointData) -> GansPoint:
    return GansPoint(-d.p, -d.q)


def gauss_jacobian(d: GraphPointData) -> Jacobian2:
    j = d.jet
    return Jacobian2(-j.f_xx, -j.f_xy - 0.5, -j.f_xy + 0.5, -j.f_yy)


def gauss_det(d: GraphPointData) -> float:
    j = d.jet
    return j.f_xx * j.f_yy - j.f_xy * j.f_xy + 0.25


# ---------------------------------------------------------- metric calculus


def _first_partials(d: GraphPointData):
    """p and q with their first and second partials."""
    j = d.jet
    p = (d.p, j.f_xx, j.f_xy + 0.5, j.f_xxx, j.f_xxy, j.f_xyy)
    q = (d.q, j.f_xy - 0.5, j.f_yy, j.f_xxy, j.f_xyy, j.f_yyy)
    return p, q


def _metric_data(d: GraphPointData):
    """g, g^-1, d_x g^-1, d_y g^-1, D = det g and its partials."""
    (p, px, py, *_), (q, qx, qy, *_) = _first_partials(d)
    g = np.array([[1.0 + p * p, p * q], [p * q, 1.0 + q * q]])
    gx = np.array([[2 * p * px, px * q + p * qx], [px * q + p * qx, 2 * q * qx]])
    gy = np.array([[2 * p * py, py * q + p * qy], [py * q + p * qy, 2 * q * qy]])
    gi = np.linalg.inv(g)
    gix = -gi @ gx @ gi
    giy = -gi @ gy @ gi
    D = 1.0 + p * p + q * q
    Dx = 2 * (p * px + q * qx)
    Dy = 2 * (p * py + q * qy)
    return gi, gix, giy, D, Dx, Dy


def _component_derivatives(component, d: GraphPointData):
    """Gradient and Hessian of alpha phi^1 + beta phi^2."""
    if component in (1, 2):
        alpha, beta = (1.0, 0.0) if component == 1 else (0.0, 1.0)
    else:
        alpha, beta = (float(c) for c in component)
    (_, px, py, pxx, pxy, pyy), (_, qx, qy, qxx, qxy, qyy) = _first_partials(d)
    grad = -np.array([alpha * px + beta * qx, alpha * py + beta * qy])
    hess = -np.array([
        [alpha * pxx + beta * qxx, alpha * pxy + beta * qxy],
        [alpha * pxy + beta * qxy, alpha * pyy + beta * qyy],
    ])
    return grad, hess


def laplace_beltrami(component, d: GraphPointData) -> float:
    """Laplacian of a Gauss-map component on the induced metric.

    ``component`` is 1, 2 or a weight pair (alpha, beta) for
    alpha phi^1 + beta phi^2.  Expands (1/sqrt D) d_i(sqrt D g^ij d_j h) as
    g^ij h_ij + (d_i g^ij + g^ij D_i / 2D) h_j.
    """
    gi, gix, giy, D, Dx, Dy = _metric_data(d)
    grad, hess = _component_derivatives(component, d)
    drift = gix[0] + giy[1] + (gi[0] * Dx + gi[1] * Dy) / (2.0 * D)
    return float(np.sum(gi * hess) + drift @ grad)


def tension_field(d: GraphPointData) -> TensionValue:
    gi = _metric_data(d)[0]
    J = gauss_jacobian(d).matrix()
    S = J @ gi @ J.T
    gamma = gans.christoffel_at(gauss_map(d)).array()
    t1 = laplace_beltrami(1, d) + float(np.sum(gamma[0] * S))
    t2 = laplace_beltrami(2, d) + float(np.sum(gamma[1] * S))
    return TensionValue(t1, t2)


@dataclass(frozen=True)
class CurvatureGradient:
    H: float
    H_x: float
    H_y: float
    w: float
    w_x: float
    w_y: float


def curvature_gradient(d: GraphPointData) -> CurvatureGradient:
    """H = R / (2 w^3) with R the minimal-graph residual, and first partials."""
    (p, px, py, *_), (q, qx, qy, *_) = _first_partials(d)
    j = d.jet
    w = d.w
    wx = (p * px + q * qx) / w
    wy = (p * py + q * qy) / w
    R = (1 + q * q) * j.f_xx - 2 * p * q * j.f_xy + (1 + p * p) * j.f_yy

    def dR(pd, qd, fxx_d, fxy_d, fyy_d):
        return (
            2 * q * qd * j.f_xx + (1 + q * q) * fxx_d
            - 2 * (pd * q + p * qd) * j.f_xy - 2 * p * q * fxy_d
            + 2 * p * pd * j.f_yy + (1 + p * p) * fyy_d
        )

    Rx = dR(px, qx, j.f_xxx, j.f_xxy, j.f_xyy)
    Ry = dR(py, qy, j.f_xxy, j.f_xyy, j.f_yyy)
    H = R / (2 * w**3)
    Hx = Rx / (2 * w**3) - 3 * H * wx / w
    Hy = Ry / (2 * w**3) - 3 * H * wy / w
    return CurvatureGradient(H, Hx, Hy, w, wx, wy)


def hg_residual(d: GraphPointData) -> tuple[float, float]:
    """LHS - RHS of both lines of the tension/mean-curvature identity

        tau1 + 2w H_x = H (2q/w - 4 w_x + 4 p H w^2)
        tau2 + 2w H_y = H (-2p/w - 4 w_y + 4 q H w^2)
    """
    c = curvature_gradient(d)
    tau = tension_field(d)
    p, q, w, H = d.p, d.q, c.w, c.H
    r1 = tau.t1 + 2 * w * c.H_x - H * (2 * q / w - 4 * c.w_x + 4 * p * H * w * w)
    r2 = tau.t2 + 2 * w * c.H_y - H * (-2 * p / w - 4 * c.w_y + 4 * q * H * w * w)
    return r1, r2


def appendix_numerators(d: GraphPointData) -> tuple[float, float]:
    """Closed polynomial numerators (T1, T2) in f's derivatives and (x, y)."""
    j = d.jet
    U, V = d.x, d.y
    fx, fy, fxx, fxy, fyy = j.f_x, j.f_y, j.f_xx, j.f_xy, j.f_yy
    m = U - 2 * fy
    n = V + 2 * fx
    k = 4 + U * U + 4 * fy * (fy - U)
    A = fxx * k + 4 * fyy + n * (2 * fxy * m + n * fyy)
    B1 = (-6 + 4 * fxy + n * (2 * n * fxy + fxx * m)) * m + n * (4 + V * V + 4 * fx * (V + fx)) * fyy
    B2 = (
        2 * V * (3 + 2 * fxy)
        + 4 * fx * fx * m * fyy
        + 4 * fx * (3 + fxy * (2 + U * U + 4 * fy * (fy - U)) + V * m * fyy)
        + m * (fxx * k + V * (2 * fxy * m + V * fyy))
    )
    return A * B1, -A * B2


def appendix_numerator_check(d: GraphPointData) -> tuple[float, float]:
    """[tau^a + (2Hw)_a] - APPENDIX_SIGN * T_a / (32 w^4) for a = x, y."""
    c = curvature_gradient(d)
    tau = tension_field(d)
    T1, T2 = appendix_numerators(d)
    w4 = c.w**4
    d1 = 2 * (c.H_x * c.w + c.H * c.w_x)
    d2 = 2 * (c.H_y * c.w + c.H * c.w_y)
    return (
        tau.t1 + d1 - APPENDIX_SIGN * T1 / (32 * w4),
        tau.t2 + d2 - APPENDIX_SIGN * T2 / (32 * w4),
    )


# ------------------------------------------------------------- equivariance


def _lin(cx: float, cy: float, shift_x: float, shift_y: float):
    """Node for cx (x - shift_x) + cy (y - shift_y)."""
    X = Binary("-", Var("x"), const(shift_x)) if shift_x else Var("x")
    Y = Binary("-", Var("y"), const(shift_y)) if shift_y else Var("y")
    return Binary("+", Binary("*", const(cx), X), Binary("*", const(cy), Y))


def equivariant_graph(spec: GraphSurface, iso: HeisIsometry) -> GraphSurface:
    """The graph h(xb, yb) of iso(graph f) in the image coordinates.

    h = eps f(A^-1 (xb - a, yb - b)) + (a yb - b xb)/2 + c, with A the
    planar part of ``iso``, eps its z-sign and (a, b, c) its translation.
    """
    if not isinstance(spec, GraphSurface):
        raise SurfaceError("equivariant_graph needs an expression graph")
    a, b, c = (float(t) for t in iso.translation)
    Ainv = np.linalg.inv(iso.planar()) if iso.kind == "rotation" else iso.planar()
    new_x = _lin(Ainv[0, 0], Ainv[0, 1], a, b)
    new_y = _lin(Ainv[1, 0], Ainv[1, 1], a, b)
    body = spec.expression.substitute({"x": new_x, "y": new_y}).root
    if iso.z_sign < 0:
        body = Unary("neg", body)
    shear = Binary("/", Binary("-", Binary("*", const(a), Var("y")), Binary("*", const(b), Var("x"))), Num(2.0))
    root = Binary("+", Binary("+", body, shear), const(c))
    expr = type(spec.expression)(root, spec.expression.variables, spec.expression.parameters)
    name = f"{spec.name or 'graph'}@{iso.kind}"
    return GraphSurface(expr, dict(spec.params), spec.domain, name)


def gauss_transform(iso: HeisIsometry) -> np.ndarray:
    """Matrix M with phi_new(iso(x, y)) = M phi(x, y)."""
    if iso.kind == "rotation":
        return iso.planar()
    return REFLECTION_SIGN * iso.planar()


# ------------------------------------------------------------- conformality


def conformality(d: GraphPointData) -> tuple[float, float]:
    """(defect, lambda): max |phi*h - lambda I| with least-squares lambda."""
    I = forms_graph(d).first()
    if not np.linalg.det(I) > 0:
        raise DegenerateFormsError("first fundamental form is degenerate")
    J = gauss_jacobian(d).matrix()
    P = J.T @ gans.metric_at(gauss_map(d)).matrix() @ J
    lam = float(np.sum(P * I) / np.sum(I * I))
    return float(np.max(np.abs(P - lam * I))), lam


def conformality_defect(d: GraphPointData) -> float:
    return conformality(d)[0]


# -------------------------------------------------- sphere-valued Gauss map


def sphere_gauss_map(d: GraphPointData) -> FrameVector:
    """Unit normal translated to the identity: its frame components."""
    return unit_normal(d)


def ripoll_rhs(d: GraphPointData, v) -> FrameVector:
    """-(A_eta v + nabla_v eta_bar), eta_bar the left-invariant extension of eta."""
    Xx, Xy = tangent_basis(d)
    direction = v[0] * Xx + v[1] * Xy
    eta = unit_normal(d)
    alpha = heis.ZERO
    for jdx, ej in enumerate(eta, start=1):
        alpha = alpha + ej * heis.nabla_frame(direction, jdx)
    return -(weingarten(d, v) + alpha)


__all__ = [
    "APPENDIX_SIGN", "REFLECTION_SIGN", "TensionValue", "Jacobian2", "CurvatureGradient",
    "gauss_map", "gauss_jacobian", "gauss_det", "laplace_beltrami", "tension_field",
    "curvature_gradient", "hg_residual", "appendix_numerators", "appendix_numerator_check",
    "equivariant_graph", "gauss_transform", "conformality", "conformality_defect",
    "sphere_gauss_map", "ripoll_rhs",
]

"""Finite-difference oracle.

Everything here sees the surface only through a black-box height function
fn(x, y) -> z, so it shares no code path with the jet arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import gans, heis
from ..expr import ExpressionError, Jet3
from ..gans import GansPoint

Height = Callable[[float, float], float]

# step for Richardson-extrapolated jets and for differencing derived fields
JET_STEP = 1e-3
OUTER_STEP = 2.5e-3


class OracleDomainError(ValueError):
    pass


def _safe(fn: Height, x: float, y: float) -> float:
    try:
        v = float(fn(x, y))
    except (ExpressionError, ArithmeticError, ValueError) as exc:
        raise OracleDomainError(f"stencil point ({x}, {y}) leaves the domain: {exc}") from exc
    if not math.isfinite(v):
        raise OracleDomainError(f"non-finite value at stencil point ({x}, {y})")
    return v


def fd_jet3(fn: Height, x: float, y: float, h: float) -> Jet3:
    """Second-order central differences for all partials up to order 3."""
    if not h > 0:
        raise ValueError("step must be positive")
    cache: dict[tuple[int, int], float] = {}

    def f(i: int, j: int) -> float:
        if (i, j) not in cache:
            cache[i, j] = _safe(fn, x + i * h, y + j * h)
        return cache[i, j]

    h2, h3 = h * h, h * h * h
    fxx_at = lambda j: (f(1, j) - 2 * f(0, j) + f(-1, j)) / h2  # noqa: E731
    fyy_at = lambda i: (f(i, 1) - 2 * f(i, 0) + f(i, -1)) / h2  # noqa: E731
    return Jet3(
        f(0, 0),
        (f(1, 0) - f(-1, 0)) / (2 * h),
        (f(0, 1) - f(0, -1)) / (2 * h),
        fxx_at(0),
        (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4 * h2),
        fyy_at(0),
        (f(2, 0) - 2 * f(1, 0) + 2 * f(-1, 0) - f(-2, 0)) / (2 * h3),
        (fxx_at(1) - fxx_at(-1)) / (2 * h),
        (fyy_at(1) - fyy_at(-1)) / (2 * h),
        (f(0, 2) - 2 * f(0, 1) + 2 * f(0, -1) - f(0, -2)) / (2 * h3),
    )


def richardson_jet(fn: Height, x: float, y: float, h: float = JET_STEP) -> Jet3:
    """(4 J(h/2) - J(h)) / 3, fourth-order accurate."""
    coarse = fd_jet3(fn, x, y, h).as_array()
    fine = fd_jet3(fn, x, y, h / 2).as_array()
    return Jet3.from_array((4.0 * fine - coarse) / 3.0)


def d1(g: Callable[[float], float], t: float, h: float = OUTER_STEP) -> float:
    """Fourth-order central first derivative."""
    return (8.0 * (g(t + h) - g(t - h)) - (g(t + 2 * h) - g(t - 2 * h))) / (12.0 * h)


# ---------------------------------------------------------------- graph data


@dataclass(frozen=True)
class LocalData:
    p: float
    q: float
    w: float
    H: float
    dphi: np.ndarray  # rows phi^1, phi^2; columns d/dx, d/dy
    ginv: np.ndarray
    sqrtD: float


def local_data(fn: Height, x: float, y: float, h: float = JET_STEP) -> LocalData:
    j = richardson_jet(fn, x, y, h)
    p = j.f_x + y / 2
    q = j.f_y - x / 2
    g = np.array([[1 + p * p, p * q], [p * q, 1 + q * q]])
    D = float(np.linalg.det(g))
    w = math.sqrt(1 + p * p + q * q)
    H = ((1 + q * q) * j.f_xx - 2 * p * q * j.f_xy + (1 + p * p) * j.f_yy) / (2 * w**3)
    dphi = -np.array([[j.f_xx, j.f_xy + 0.5], [j.f_xy - 0.5, j.f_yy]])
    return LocalData(p, q, w, H, dphi, np.linalg.inv(g), math.sqrt(D))


def fd_laplacian(fn: Height, x: float, y: float) -> np.ndarray:
    """Divergence-form Laplacian of both Gauss-map components."""

    def flux(a: float, b: float) -> np.ndarray:
        d = local_data(fn, a, b)
        return d.sqrtD * (d.dphi @ d.ginv)  # [alpha, i] = sqrtD g^ij d_j phi^alpha

    div = np.array([
        d1(lambda s: flux(s, y)[a, 0], x) + d1(lambda s: flux(x, s)[a, 1], y) for a in range(2)
    ])
    return div / local_data(fn, x, y).sqrtD


def fd_tension(fn: Height, x: float, y: float) -> np.ndarray:
    d = local_data(fn, x, y)
    lap = fd_laplacian(fn, x, y)
    gamma = gans.christoffel_from_metric(gans.metric_at, GansPoint(-d.p, -d.q)).array()
    S = d.dphi @ d.ginv @ d.dphi.T
    return lap + np.array([np.sum(gamma[0] * S), np.sum(gamma[1] * S)])


def fd_curvature(fn: Height, x: float, y: float) -> dict[str, float]:
    d = local_data(fn, x, y)
    return {
        "H": d.H,
        "w": d.w,
        "p": d.p,
        "q": d.q,
        "H_x": d1(lambda s: local_data(fn, s, y).H, x),
        "H_y": d1(lambda s: local_data(fn, x, s).H, y),
        "w_x": d1(lambda s: local_data(fn, s, y).w, x),
        "w_y": d1(lambda s: local_data(fn, x, s).w, y),
    }


def fd_hg_residual(fn: Height, x: float, y: float) -> tuple[float, float]:
    """The tension/mean-curvature identity with every ingredient by differences."""
    tau = fd_tension(fn, x, y)
    c = fd_curvature(fn, x, y)
    H, w, p, q = c["H"], c["w"], c["p"], c["q"]
    r1 = tau[0] + 2 * w * c["H_x"] - H * (2 * q / w - 4 * c["w_x"] + 4 * p * H * w * w)
    r2 = tau[1] + 2 * w * c["H_y"] - H * (-2 * p / w - 4 * c["w_y"] + 4 * q * H * w * w)
    return float(r1), float(r2)


def fd_gauss_map(fn: Height, x: float, y: float, h: float = JET_STEP) -> np.ndarray:
    j = richardson_jet(fn, x, y, h)
    return np.array([-(j.f_x + y / 2), -(j.f_y - x / 2)])


# ---------------------------------------------------------------- calibration


def calibrate_appendix_sign(fn: Height, points, numerators) -> tuple[float, float]:
    """Sign s minimising |tau + d(2Hw) - s T / (32 w^4)| with FD left sides.

    ``numerators(x, y)`` returns the closed-form pair (T1, T2).
    Returns (s, residual under s).
    """
    lhs, rhs = [], []
    for x, y in points:
        tau = fd_tension(fn, x, y)
        c = fd_curvature(fn, x, y)
        lhs.append((
            tau[0] + 2 * (c["H_x"] * c["w"] + c["H"] * c["w_x"]),
            tau[1] + 2 * (c["H_y"] * c["w"] + c["H"] * c["w_y"]),
        ))
        T = numerators(x, y)
        rhs.append((T[0] / (32 * c["w"] ** 4), T[1] / (32 * c["w"] ** 4)))
    lhs, rhs = np.array(lhs), np.array(rhs)
    errs = {s: float(np.max(np.abs(lhs - s * rhs))) for s in (1.0, -1.0)}
    best = min(errs, key=errs.get)
    return best, errs[best]


def calibrate_reflection_sign(fn: Height, iso: heis.HeisIsometry, points) -> tuple[float, float]:
    """Sign s with phi_new(iso p) = s [[c, s], [s, -c]] phi(p), by differences.

    The image graph is sampled by pushing surface points through the
    isometry, never through the expression layer.
    """
    A = iso.planar()
    a, b, _ = iso.translation

    def image_height(xb: float, yb: float) -> float:
        X, Y = np.linalg.solve(A, np.array([xb - a, yb - b]))
        return heis.apply_isometry(iso, heis.HeisPoint(float(X), float(Y), _safe(fn, float(X), float(Y)))).z

    errs = {1.0: 0.0, -1.0: 0.0}
    for x, y in points:
        P = heis.apply_isometry(iso, heis.HeisPoint(x, y, _safe(fn, x, y)))
        new = fd_gauss_map(image_height, P.x, P.y)
        old = A @ fd_gauss_map(fn, x, y)
        for s in errs:
            errs[s] = max(errs[s], float(np.max(np.abs(new - s * old))))
    best = min(errs, key=errs.get)
    return best, errs[best]


# --------------------------------------------------------------- Heisenberg


def fd_christoffel3(metric: Callable[[np.ndarray], np.ndarray], at: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Coordinate Christoffel symbols [l, m, n] of a 3D metric by differences."""
    at = np.asarray(at, dtype=float)
    dg = []
    for m in range(3):
        e = np.zeros(3)
        e[m] = h
        dg.append((8 * (metric(at + e) - metric(at - e)) - (metric(at + 2 * e) - metric(at - 2 * e))) / (12 * h))
    ginv = np.linalg.inv(metric(at))
    out = np.zeros((3, 3, 3))
    for lam in range(3):
        for m in range(3):
            for n in range(3):
                out[lam, m, n] = 0.5 * sum(
                    ginv[lam, s] * (dg[m][s, n] + dg[n][s, m] - dg[s][m, n]) for s in range(3)
                )
    return out


def fd_jacobian3(fmap: Callable[[np.ndarray], np.ndarray], at: np.ndarray, h: float = 1e-5) -> np.ndarray:
    at = np.asarray(at, dtype=float)
    cols = []
    for m in range(3):
        e = np.zeros(3)
        e[m] = h
        cols.append((fmap(at + e) - fmap(at - e)) / (2 * h))
    return np.array(cols).T


def fd_jacobian2(fmap: Callable[[float, float], np.ndarray], u: float, v: float, h: float = 1e-5) -> np.ndarray:
    cu = (np.asarray(fmap(u + h, v)) - np.asarray(fmap(u - h, v))) / (2 * h)
    cv = (np.asarray(fmap(u, v + h)) - np.asarray(fmap(u, v - h))) / (2 * h)
    return np.array([cu, cv]).T

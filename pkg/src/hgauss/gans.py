"""The Gans model of the hyperbolic plane.

The model is the whole (u, v) plane with metric

    h = ((1 + v^2) du^2 - 2uv du dv + (1 + u^2) dv^2) / (1 + u^2 + v^2),

pulled back from the Poincare disk by F(x, y) = 2(x, y) / (1 - x^2 - y^2).
Geodesics are lines through the origin and origin-centred hyperbola
branches.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels


class GansDomainError(ValueError):
    pass


@dataclass(frozen=True)
class GansPoint:
    u: float
    v: float

    def __iter__(self):
        yield self.u
        yield self.v

    def as_complex(self) -> complex:
        return complex(self.u, self.v)


@dataclass(frozen=True)
class Metric2:
    h11: float
    h12: float
    h22: float

    @property
    def det(self) -> float:
        return self.h11 * self.h22 - self.h12 * self.h12

    def matrix(self) -> np.ndarray:
        return np.array([[self.h11, self.h12], [self.h12, self.h22]])

    def inner(self, a, b) -> float:
        return self.h11 * a[0] * b[0] + self.h12 * (a[0] * b[1] + a[1] * b[0]) + self.h22 * a[1] * b[1]


@dataclass(frozen=True)
class Christoffel2:
    """Connection coefficients, ``gamma[k][i][j]`` = Gamma^{k+1}_{i+1, j+1}."""

    gamma: tuple

    def __getitem__(self, k):
        return self.gamma[k]

    def array(self) -> np.ndarray:
        return np.array(self.gamma)


def hemisphere_to_plane(x: float, y: float, z: float) -> GansPoint:
    """Central projection of the upper unit hemisphere onto z = 1."""
    if abs(x * x + y * y + z * z - 1.0) > 1e-9:
        raise GansDomainError(f"({x}, {y}, {z}) is not on the unit sphere")
    if z <= 0:
        raise GansDomainError("point is not on the open upper hemisphere")
    return GansPoint(x / z, y / z)


def disk_to_gans(x: float, y: float) -> GansPoint:
    r2 = x * x + y * y
    if r2 >= 1.0:
        raise GansDomainError(f"({x}, {y}) is not inside the unit disk")
    s = 2.0 / (1.0 - r2)
    return GansPoint(s * x, s * y)


def gans_to_disk(p: GansPoint) -> tuple[float, float]:
    s = 1.0 + math.sqrt(1.0 + p.u * p.u + p.v * p.v)
    return p.u / s, p.v / s


def metric_at(p: GansPoint) -> Metric2:
    u, v = p
    den = 1.0 + u * u + v * v
    return Metric2((1.0 + v * v) / den, -u * v / den, (1.0 + u * u) / den)


def christoffel_at(p: GansPoint) -> Christoffel2:
    u, v = p
    den = 1.0 + u * u + v * v
    g1_11 = -u * (v * v + 1.0) / den
    g1_12 = u * u * v / den
    g1_22 = -(u**3 + u) / den
    g2_11 = -(v**3 + v) / den
    g2_12 = u * v * v / den
    g2_22 = -(u * u + 1.0) * v / den
    return Christoffel2(
        (
            ((g1_11, g1_12), (g1_12, g1_22)),
            ((g2_11, g2_12), (g2_12, g2_22)),
        )
    )


def christoffel_from_metric(metric, p: GansPoint, step: float = 1e-4) -> Christoffel2:
    """Gamma^l_mn = 1/2 g^ls (d_m g_sn + d_n g_sm - d_s g_mn) for any metric callable.

    Metric derivatives by fourth-order central differences.
    """
    u, v = p

    def g(a, b):
        return metric(GansPoint(a, b)).matrix()

    def d(du, dv):
        def f(k):
            return g(u + k * du * step, v + k * dv * step)

        return (8.0 * (f(1) - f(-1)) - (f(2) - f(-2))) / (12.0 * step)

    dg = [d(1, 0), d(0, 1)]  # dg[m][s, n] = d_m g_sn
    ginv = np.linalg.inv(g(u, v))
    gamma = np.zeros((2, 2, 2))
    for lam in range(2):
        for m in range(2):
            for n in range(2):
                gamma[lam, m, n] = 0.5 * sum(
                    ginv[lam, s] * (dg[m][s, n] + dg[n][s, m] - dg[s][m, n]) for s in range(2)
                )
    return Christoffel2(tuple(tuple(tuple(float(c) for c in row) for row in mat) for mat in gamma))


@dataclass(frozen=True)
class GeodesicPath:
    """Sampled geodesic: parameter, position and velocity columns."""

    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    du: np.ndarray
    dv: np.ndarray

    def points(self) -> list[GansPoint]:
        return [GansPoint(float(a), float(b)) for a, b in zip(self.u, self.v)]

    def speed(self) -> np.ndarray:
        den = 1.0 + self.u**2 + self.v**2
        q = ((1 + self.v**2) * self.du**2 - 2 * self.u * self.v * self.du * self.dv + (1 + self.u**2) * self.dv**2) / den
        return np.sqrt(q)


def geodesic(start: GansPoint, velocity, t_max: float, step: float) -> GeodesicPath:
    """Unit-speed geodesic from ``start`` in direction ``velocity`` (RK4)."""
    if step <= 0 or t_max <= 0:
        raise ValueError("step and t_max must be positive")
    du, dv = float(velocity[0]), float(velocity[1])
    norm = math.sqrt(metric_at(start).inner((du, dv), (du, dv)))
    if norm == 0.0:
        raise ValueError("velocity must be non-zero")
    nsteps = int(round(t_max / step))
    out = kernels.geodesic_rk4(float(start.u), float(start.v), du / norm, dv / norm, float(step), nsteps)
    return GeodesicPath(out[:, 0], out[:, 1], out[:, 2], out[:, 3], out[:, 4])


# -------------------------------------------------------------- isometries


@dataclass(frozen=True)
class GansIsometry:
    """An isometry of the Gans model.

    ``kind`` is ``"rotation"`` (by ``theta`` about the origin),
    ``"reflection"`` (across the line ``a u + b v = 0``, ``line = (a, b)``)
    or ``"mobius"``: F o rho o F^-1 with
    rho(z) = e^{i theta} (z' - a) / (1 - conj(a) z'), z' = conj(z) if
    ``conjugate`` else z.
    """

    kind: str
    theta: float = 0.0
    line: tuple[float, float] = (0.0, 1.0)
    a: complex = 0j
    conjugate: bool = False

    def __post_init__(self):
        if self.kind not in ("rotation", "reflection", "mobius"):
            raise ValueError(f"unknown isometry kind {self.kind!r}")
        if self.kind == "mobius" and abs(self.a) >= 1:
            raise ValueError("Mobius parameter must lie in the unit disk")
        if self.kind == "reflection" and self.line[0] == 0 and self.line[1] == 0:
            raise ValueError("reflection line needs a non-zero normal")

    @classmethod
    def rotation(cls, theta: float) -> "GansIsometry":
        return cls("rotation", theta=theta)

    @classmethod
    def reflection(cls, a: float, b: float) -> "GansIsometry":
        return cls("reflection", line=(a, b))

    @classmethod
    def mobius(cls, a: complex, theta: float = 0.0, conjugate: bool = False) -> "GansIsometry":
        return cls("mobius", theta=theta, a=complex(a), conjugate=conjugate)

    def inverse(self) -> "GansIsometry":
        if self.kind == "rotation":
            return GansIsometry.rotation(-self.theta)
        if self.kind == "reflection":
            return self
        rot = cmath.exp(1j * self.theta)
        if self.conjugate:
            return GansIsometry.mobius(-self.a.conjugate() / rot, self.theta, True)
        return GansIsometry.mobius(-self.a * rot, -self.theta, False)


def apply_isometry(iso: GansIsometry, p: GansPoint) -> GansPoint:
    if iso.kind == "rotation":
        c, s = math.cos(iso.theta), math.sin(iso.theta)
        return GansPoint(c * p.u - s * p.v, s * p.u + c * p.v)
    if iso.kind == "reflection":
        a, b = iso.line
        k = 2.0 * (a * p.u + b * p.v) / (a * a + b * b)
        return GansPoint(p.u - k * a, p.v - k * b)
    z = complex(*gans_to_disk(p))
    if iso.conjugate:
        z = z.conjugate()
    w = cmath.exp(1j * iso.theta) * (z - iso.a) / (1.0 - iso.a.conjugate() * z)
    return disk_to_gans(w.real, w.imag)

"""The Heisenberg group H3 in exponential coordinates.

Product (a, b, c) * (x, y, z) = (a + x, b + y, c + z + (a y - b x) / 2),
left-invariant metric ds^2 = dx^2 + dy^2 + (y dx / 2 - x dy / 2 + dz)^2 with
orthonormal frame

    E1 = d/dx - (y/2) d/dz,   E2 = d/dy + (x/2) d/dz,   E3 = d/dz.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class HeisPoint:
    x: float
    y: float
    z: float

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class FrameVector:
    """Components on the left-invariant frame E1, E2, E3."""

    c1: float
    c2: float
    c3: float

    def __iter__(self):
        yield self.c1
        yield self.c2
        yield self.c3

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3)

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(self.c1 - other.c1, self.c2 - other.c2, self.c3 - other.c3)

    def __neg__(self) -> "FrameVector":
        return FrameVector(-self.c1, -self.c2, -self.c3)

    def __mul__(self, k: float) -> "FrameVector":
        return FrameVector(k * self.c1, k * self.c2, k * self.c3)

    __rmul__ = __mul__

    def dot(self, other: "FrameVector") -> float:
        # the frame is orthonormal
        return self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])


ZERO = FrameVector(0.0, 0.0, 0.0)


def multiply(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    return HeisPoint(p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (p.x * q.y - p.y * q.x))


def inverse(p: HeisPoint) -> HeisPoint:
    return HeisPoint(-p.x, -p.y, -p.z)


IDENTITY = HeisPoint(0.0, 0.0, 0.0)


def frame_at(p: HeisPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coordinate components (d/dx, d/dy, d/dz) of E1, E2, E3 at ``p``."""
    return (
        np.array([1.0, 0.0, -0.5 * p.y]),
        np.array([0.0, 1.0, 0.5 * p.x]),
        np.array([0.0, 0.0, 1.0]),
    )


def metric_at(p: HeisPoint) -> np.ndarray:
    omega = np.array([0.5 * p.y, -0.5 * p.x, 1.0])
    g = np.outer(omega, omega)
    g[0, 0] += 1.0
    g[1, 1] += 1.0
    return g


def to_frame(p: HeisPoint, vec) -> FrameVector:
    """Frame components of a coordinate tangent vector at ``p``."""
    vx, vy, vz = vec
    return FrameVector(vx, vy, vz + 0.5 * p.y * vx - 0.5 * p.x * vy)


def to_coords(p: HeisPoint, w: FrameVector) -> np.ndarray:
    return np.array([w.c1, w.c2, w.c3 - 0.5 * p.y * w.c1 + 0.5 * p.x * w.c2])


# nabla_{E_i} E_j, indices 0..2
_CONNECTION = (
    (ZERO, FrameVector(0.0, 0.0, 0.5), FrameVector(0.0, -0.5, 0.0)),
    (FrameVector(0.0, 0.0, -0.5), ZERO, FrameVector(0.5, 0.0, 0.0)),
    (FrameVector(0.0, -0.5, 0.0), FrameVector(0.5, 0.0, 0.0), ZERO),
)


def connection_frame(i: int, j: int) -> FrameVector:
    """nabla_{E_i} E_j for i, j in {1, 2, 3}."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError("frame indices are 1, 2 or 3")
    return _CONNECTION[i - 1][j - 1]


def nabla_frame(v: FrameVector, j: int) -> FrameVector:
    """nabla_v E_j for a frame-component tangent vector ``v``."""
    out = ZERO
    for i, vi in enumerate(v, start=1):
        if vi:
            out = out + vi * connection_frame(i, j)
    return out


FrameField = Callable[[float, float], tuple]


def covariant_derivative(field: FrameField, at: tuple[float, float], direction: FrameVector) -> FrameVector:
    """nabla_v W for a frame field W given over the (x, y) parameters of a graph.

    ``field(x, y)`` returns ``(W, W_x, W_y)``, each a FrameVector or
    3-sequence of frame components and their partial derivatives.  A
    tangent vector with frame components (c1, c2, c3) projects to (c1, c2) in
    the xy-plane, so it differentiates a function of (x, y) as
    c1 d/dx + c2 d/dy.
    """
    W, Wx, Wy = (FrameVector(*comp) for comp in field(*at))
    c1, c2, _ = direction
    out = FrameVector(*(c1 * a + c2 * b for a, b in zip(Wx, Wy)))
    for j, wj in enumerate(W, start=1):
        if wj:
            out = out + wj * nabla_frame(direction, j)
    return out


# -------------------------------------------------------------- isometries


@dataclass(frozen=True)
class HeisIsometry:
    """L_(a, b, c) o A with A a rotation about the z-axis by ``theta`` or,
    for ``kind="reflection"``, [[cos t, sin t, 0], [sin t, -cos t, 0], [0, 0, -1]]
    (reflection across the line at angle t/2 composed with z -> -z).
    """

    kind: str = "rotation"
    theta: float = 0.0
    translation: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.kind not in ("rotation", "reflection"):
            raise ValueError(f"unknown isometry kind {self.kind!r}")

    @classmethod
    def rotation(cls, theta: float) -> "HeisIsometry":
        return cls("rotation", theta)

    @classmethod
    def reflection(cls, theta: float) -> "HeisIsometry":
        return cls("reflection", theta)

    @classmethod
    def translation_by(cls, a: float, b: float, c: float) -> "HeisIsometry":
        return cls("rotation", 0.0, (a, b, c))

    @property
    def z_sign(self) -> float:
        return 1.0 if self.kind == "rotation" else -1.0

    def planar(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        if self.kind == "rotation":
            return np.array([[c, -s], [s, c]])
        return np.array([[c, s], [s, -c]])

    def matrix(self) -> np.ndarray:
        m = np.zeros((3, 3))
        m[:2, :2] = self.planar()
        m[2, 2] = self.z_sign
        return m


def apply_isometry(iso: HeisIsometry, p: HeisPoint) -> HeisPoint:
    ax, ay = iso.planar() @ np.array([p.x, p.y])
    q = HeisPoint(float(ax), float(ay), iso.z_sign * p.z)
    return multiply(HeisPoint(*iso.translation), q)

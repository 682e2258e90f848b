"""Pure-Python kernels.

Reference implementation of the hot loops; ``_kernels_c.pyx`` mirrors it
line for line.  Three kernels live here:

* ``eval_tape`` / ``eval_tape_many`` -- evaluate a compiled expression tape
  in order-3 bivariate Taylor arithmetic, returning the value and all
  partial derivatives up to order three.
* ``graph_row`` / ``graph_rows`` -- every per-point quantity of a graph
  surface (forms, mean curvature, Gauss map, tension field, ...) from a
  jet of the height function.
* ``geodesic_rk4`` -- fixed-step RK4 integration of the Gans geodesic ODE.
"""
import math

import numpy as np

# opcodes, shared with the Cython module and hgauss.expr
OP_CONST = 0
OP_VARX = 1
OP_VARY = 2
OP_ADD = 3
OP_SUB = 4
OP_MUL = 5
OP_DIV = 6
OP_NEG = 7
OP_POWI = 8
OP_POWR = 9
OP_POW = 10
OP_SQRT = 11
OP_LN = 12
OP_EXP = 13
OP_SIN = 14
OP_COS = 15
OP_SINH = 16
OP_COSH = 17
OP_TANH = 18
OP_COTH = 19

NJET = 10
NROW = 27

# Taylor coefficient of x^i y^j is d^{i+j}f / (i! j!)
_FACT = (1.0, 1.0, 1.0, 2.0, 1.0, 2.0, 6.0, 2.0, 2.0, 6.0)


def _mul(a, b):
    a0, a1, a2, a3, a4, a5, a6, a7, a8, a9 = a
    b0, b1, b2, b3, b4, b5, b6, b7, b8, b9 = b
    return [
        a0 * b0,
        a0 * b1 + a1 * b0,
        a0 * b2 + a2 * b0,
        a0 * b3 + a1 * b1 + a3 * b0,
        a0 * b4 + a1 * b2 + a2 * b1 + a4 * b0,
        a0 * b5 + a2 * b2 + a5 * b0,
        a0 * b6 + a1 * b3 + a3 * b1 + a6 * b0,
        a0 * b7 + a1 * b4 + a2 * b3 + a3 * b2 + a4 * b1 + a7 * b0,
        a0 * b8 + a1 * b5 + a2 * b4 + a4 * b2 + a5 * b1 + a8 * b0,
        a0 * b9 + a2 * b5 + a5 * b2 + a9 * b0,
    ]


def _compose(a, g0, g1, g2, g3):
    """g(a) for a univariate g with derivatives g0..g3 at a[0]."""
    d = [0.0] + list(a[1:])
    d2 = _mul(d, d)
    d3 = _mul(d2, d)
    h2 = 0.5 * g2
    h3 = g3 / 6.0
    return [g0] + [g1 * d[k] + h2 * d2[k] + h3 * d3[k] for k in range(1, NJET)]


def _recip(a):
    a0 = a[0]
    r = 1.0 / a0
    return _compose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r)


def _powi(a, n):
    if n < 0:
        a = _recip(a)
        n = -n
    out = [1.0] + [0.0] * (NJET - 1)
    for _ in range(n):
        out = _mul(out, a)
    return out


def _ln(a):
    a0 = a[0]
    r = 1.0 / a0
    return _compose(a, math.log(a0), r, -r * r, 2.0 * r * r * r)


def _exp(a):
    e = math.exp(a[0])
    return _compose(a, e, e, e, e)


def eval_tape(ops, arg0, arg1, consts, x, y):
    """Evaluate a tape at (x, y).

    Returns ``(jet, bad)`` where ``jet`` is a length-10 array of derivatives
    (f, f_x, f_y, f_xx, f_xy, f_yy, f_xxx, f_xxy, f_xyy, f_yyy) and ``bad`` is
    the index of the instruction that left its domain, or -1.
    """
    n = len(ops)
    slots = [None] * n
    for i in range(n):
        op = ops[i]
        if op == OP_CONST:
            r = [float(consts[i])] + [0.0] * 9
        elif op == OP_VARX:
            r = [x, 1.0] + [0.0] * 8
        elif op == OP_VARY:
            r = [y, 0.0, 1.0] + [0.0] * 7
        else:
            a = slots[arg0[i]]
            a0 = a[0]
            if op == OP_ADD:
                b = slots[arg1[i]]
                r = [a[k] + b[k] for k in range(NJET)]
            elif op == OP_SUB:
                b = slots[arg1[i]]
                r = [a[k] - b[k] for k in range(NJET)]
            elif op == OP_MUL:
                r = _mul(a, slots[arg1[i]])
            elif op == OP_DIV:
                b = slots[arg1[i]]
                if b[0] == 0.0:
                    return np.full(NJET, np.nan), i
                r = _mul(a, _recip(b))
            elif op == OP_NEG:
                r = [-v for v in a]
            elif op == OP_POWI:
                m = int(consts[i])
                if m < 0 and a0 == 0.0:
                    return np.full(NJET, np.nan), i
                r = _powi(a, m)
            elif op == OP_POWR:
                if a0 <= 0.0:
                    return np.full(NJET, np.nan), i
                e = float(consts[i])
                r = _compose(
                    a,
                    a0**e,
                    e * a0 ** (e - 1.0),
                    e * (e - 1.0) * a0 ** (e - 2.0),
                    e * (e - 1.0) * (e - 2.0) * a0 ** (e - 3.0),
                )
            elif op == OP_POW:
                if a0 <= 0.0:
                    return np.full(NJET, np.nan), i
                r = _exp(_mul(slots[arg1[i]], _ln(a)))
            elif op == OP_SQRT:
                if a0 <= 0.0:
                    return np.full(NJET, np.nan), i
                s = math.sqrt(a0)
                r = _compose(a, s, 0.5 / s, -0.25 / (s * a0), 0.375 / (s * a0 * a0))
            elif op == OP_LN:
                if a0 <= 0.0:
                    return np.full(NJET, np.nan), i
                r = _ln(a)
            elif op == OP_EXP:
                r = _exp(a)
            elif op == OP_SIN:
                s, c = math.sin(a0), math.cos(a0)
                r = _compose(a, s, c, -s, -c)
            elif op == OP_COS:
                s, c = math.sin(a0), math.cos(a0)
                r = _compose(a, c, -s, -c, s)
            elif op == OP_SINH:
                s, c = math.sinh(a0), math.cosh(a0)
                r = _compose(a, s, c, s, c)
            elif op == OP_COSH:
                s, c = math.sinh(a0), math.cosh(a0)
                r = _compose(a, c, s, c, s)
            elif op == OP_TANH or op == OP_COTH:
                if op == OP_TANH:
                    t = math.tanh(a0)
                else:
                    sh = math.sinh(a0)
                    if sh == 0.0:
                        return np.full(NJET, np.nan), i
                    t = math.cosh(a0) / sh
                d1 = 1.0 - t * t
                r = _compose(a, t, d1, -2.0 * t * d1, (6.0 * t * t - 2.0) * d1)
            else:
                raise ValueError(f"unknown opcode {op}")
        slots[i] = r
    out = slots[n - 1]
    return np.array([out[k] * _FACT[k] for k in range(NJET)]), -1


def eval_tape_many(ops, arg0, arg1, consts, xs, ys):
    """Evaluate a tape at many points.

    Returns ``(jets, bad_point, bad_instr)``; on a domain error the first
    offending point and instruction are reported and ``jets`` is partial.
    """
    n = len(xs)
    out = np.empty((n, NJET))
    for k in range(n):
        jet, bad = eval_tape(ops, arg0, arg1, consts, float(xs[k]), float(ys[k]))
        if bad >= 0:
            return out, k, bad
        out[k] = jet
    return out, -1, -1


def graph_row(x, y, jet):
    """All per-point graph quantities; see ``hgauss.surface.ROW_FIELDS``."""
    fx, fy, fxx, fxy, fyy, fxxx, fxxy, fxyy, fyyy = (float(v) for v in jet[1:])
    p = fx + 0.5 * y
    q = fy - 0.5 * x
    px, py = fxx, fxy + 0.5
    qx, qy = fxy - 0.5, fyy
    pxx, pxy, pyy = fxxx, fxxy, fxyy
    qxx, qxy, qyy = fxxy, fxyy, fyyy

    E = 1.0 + p * p
    F = p * q
    G = 1.0 + q * q
    D = E + q * q
    w = math.sqrt(D)
    L = (fxx + p * q) / w
    M = (fxy + 0.5 * (q * q - p * p)) / w
    N = (fyy - p * q) / w
    num = G * fxx - 2.0 * F * fxy + E * fyy
    w3 = D * w
    H = num / (2.0 * w3)
    det = fxx * fyy - fxy * fxy + 0.25

    w_x = (p * px + q * qx) / w
    w_y = (p * py + q * qy) / w
    num_x = (
        2.0 * q * qx * fxx + G * fxxx
        - 2.0 * (px * q + p * qx) * fxy - 2.0 * F * fxxy
        + 2.0 * p * px * fyy + E * fxyy
    )
    num_y = (
        2.0 * q * qy * fxx + G * fxxy
        - 2.0 * (py * q + p * qy) * fxy - 2.0 * F * fxyy
        + 2.0 * p * py * fyy + E * fyyy
    )
    H_x = num_x / (2.0 * w3) - 1.5 * num * w_x / (w3 * w)
    H_y = num_y / (2.0 * w3) - 1.5 * num * w_y / (w3 * w)

    # surface metric derivatives and inverse
    g11x, g11y = 2.0 * p * px, 2.0 * p * py
    g12x, g12y = px * q + p * qx, py * q + p * qy
    g22x, g22y = 2.0 * q * qx, 2.0 * q * qy
    Dx = 2.0 * w * w_x
    Dy = 2.0 * w * w_y
    i11, i12, i22 = G / D, -F / D, E / D
    # d(g^-1) = -g^-1 (dg) g^-1
    a11 = i11 * g11x + i12 * g12x
    a12 = i11 * g12x + i12 * g22x
    ix11 = -(a11 * i11 + a12 * i12)
    ix12 = -(a11 * i12 + a12 * i22)
    b21 = i12 * g11y + i22 * g12y
    b22 = i12 * g12y + i22 * g22y
    iy12 = -(b21 * i11 + b22 * i12)
    iy22 = -(b21 * i12 + b22 * i22)
    c1 = ix11 + iy12 + (i11 * Dx + i12 * Dy) / (2.0 * D)
    c2 = ix12 + iy22 + (i12 * Dx + i22 * Dy) / (2.0 * D)

    lap1 = -(i11 * pxx + 2.0 * i12 * pxy + i22 * pyy + c1 * px + c2 * py)
    lap2 = -(i11 * qxx + 2.0 * i12 * qxy + i22 * qyy + c1 * qx + c2 * qy)

    # Gans Christoffel symbols at the Gauss map value (u, v) = (-p, -q)
    u, v = -p, -q
    den = 1.0 + u * u + v * v
    G111 = -u * (v * v + 1.0) / den
    G112 = u * u * v / den
    G122 = -(u * u * u + u) / den
    G211 = -(v * v * v + v) / den
    G212 = u * v * v / den
    G222 = -(u * u + 1.0) * v / den
    # S_bc = g^ij dphi^b_i dphi^c_j ; dphi = -(dp, dq), signs cancel in pairs
    S11 = i11 * px * px + 2.0 * i12 * px * py + i22 * py * py
    S12 = i11 * px * qx + i12 * (px * qy + py * qx) + i22 * py * qy
    S22 = i11 * qx * qx + 2.0 * i12 * qx * qy + i22 * qy * qy
    tau1 = lap1 + G111 * S11 + 2.0 * G112 * S12 + G122 * S22
    tau2 = lap2 + G211 * S11 + 2.0 * G212 * S12 + G222 * S22

    hg1 = tau1 + 2.0 * w * H_x - H * (2.0 * q / w - 4.0 * w_x + 4.0 * p * H * D)
    hg2 = tau2 + 2.0 * w * H_y - H * (-2.0 * p / w - 4.0 * w_y + 4.0 * q * H * D)
    lhs1 = tau1 + 2.0 * (H_x * w + H * w_x)
    lhs2 = tau2 + 2.0 * (H_y * w + H * w_y)

    U, V = x, y
    m = U - 2.0 * fy
    n = V + 2.0 * fx
    k = 4.0 + U * U + 4.0 * fy * (fy - U)
    A = fxx * k + 4.0 * fyy + n * (2.0 * fxy * m + n * fyy)
    B1 = (-6.0 + 4.0 * fxy + n * (2.0 * n * fxy + fxx * m)) * m + n * (4.0 + V * V + 4.0 * fx * (V + fx)) * fyy
    B2 = (
        2.0 * V * (3.0 + 2.0 * fxy)
        + 4.0 * fx * fx * m * fyy
        + 4.0 * fx * (3.0 + fxy * (2.0 + U * U + 4.0 * fy * (fy - U)) + V * m * fyy)
        + m * (fxx * k + V * (2.0 * fxy * m + V * fyy))
    )
    T1 = A * B1
    T2 = -A * B2

    return np.array([
        p, q, w, E, F, G, L, M, N, H, -p, -q, det,
        lap1, lap2, tau1, tau2, H_x, H_y, w_x, w_y,
        hg1, hg2, lhs1, lhs2, T1, T2,
    ])


def graph_rows(xs, ys, jets):
    n = len(xs)
    out = np.empty((n, NROW))
    for k in range(n):
        out[k] = graph_row(float(xs[k]), float(ys[k]), jets[k])
    return out


def _geo_accel(u, v, du, dv):
    den = 1.0 + u * u + v * v
    au = (u * (v * v + 1.0) * du * du - 2.0 * u * u * v * du * dv + (u * u * u + u) * dv * dv) / den
    av = ((v * v * v + v) * du * du - 2.0 * u * v * v * du * dv + (u * u + 1.0) * v * dv * dv) / den
    return au, av


def geodesic_rk4(u0, v0, du0, dv0, step, nsteps):
    """Integrate x'' = -Gamma(x', x') for the Gans metric.

    Returns an array of shape (nsteps + 1, 5) with columns t, u, v, u', v'.
    """
    out = np.empty((nsteps + 1, 5))
    u, v, du, dv = u0, v0, du0, dv0
    h = step
    out[0] = (0.0, u, v, du, dv)
    for i in range(1, nsteps + 1):
        k1a, k1b = _geo_accel(u, v, du, dv)
        u2, v2 = u + 0.5 * h * du, v + 0.5 * h * dv
        du2, dv2 = du + 0.5 * h * k1a, dv + 0.5 * h * k1b
        k2a, k2b = _geo_accel(u2, v2, du2, dv2)
        u3, v3 = u + 0.5 * h * du2, v + 0.5 * h * dv2
        du3, dv3 = du + 0.5 * h * k2a, dv + 0.5 * h * k2b
        k3a, k3b = _geo_accel(u3, v3, du3, dv3)
        u4, v4 = u + h * du3, v + h * dv3
        du4, dv4 = du + h * k3a, dv + h * k3b
        k4a, k4b = _geo_accel(u4, v4, du4, dv4)
        u += h * (du + 2.0 * du2 + 2.0 * du3 + du4) / 6.0
        v += h * (dv + 2.0 * dv2 + 2.0 * dv3 + dv4) / 6.0
        du += h * (k1a + 2.0 * k2a + 2.0 * k3a + k4a) / 6.0
        dv += h * (k1b + 2.0 * k2b + 2.0 * k3b + k4b) / 6.0
        out[i] = (i * h, u, v, du, dv)
    return out

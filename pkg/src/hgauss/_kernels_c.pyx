# cython: language_level=3
"""Compiled kernels; same API and arithmetic as ``_kernels_py``."""
from libc.math cimport sqrt, log, exp, sin, cos, sinh, cosh, tanh, pow, NAN
from libc.stdlib cimport malloc, free

import numpy as np

cdef enum:
    NJ = 10

NJET = 10
NROW = 27

cdef double FACT[10]
FACT[:] = [1.0, 1.0, 1.0, 2.0, 1.0, 2.0, 6.0, 2.0, 2.0, 6.0]


cdef inline void jmul(const double* a, const double* b, double* c) noexcept nogil:
    cdef double r[10]
    r[0] = a[0] * b[0]
    r[1] = a[0] * b[1] + a[1] * b[0]
    r[2] = a[0] * b[2] + a[2] * b[0]
    r[3] = a[0] * b[3] + a[1] * b[1] + a[3] * b[0]
    r[4] = a[0] * b[4] + a[1] * b[2] + a[2] * b[1] + a[4] * b[0]
    r[5] = a[0] * b[5] + a[2] * b[2] + a[5] * b[0]
    r[6] = a[0] * b[6] + a[1] * b[3] + a[3] * b[1] + a[6] * b[0]
    r[7] = a[0] * b[7] + a[1] * b[4] + a[2] * b[3] + a[3] * b[2] + a[4] * b[1] + a[7] * b[0]
    r[8] = a[0] * b[8] + a[1] * b[5] + a[2] * b[4] + a[4] * b[2] + a[5] * b[1] + a[8] * b[0]
    r[9] = a[0] * b[9] + a[2] * b[5] + a[5] * b[2] + a[9] * b[0]
    cdef int k
    for k in range(NJ):
        c[k] = r[k]


cdef inline void jcompose(const double* a, double g0, double g1, double g2, double g3,
                          double* c) noexcept nogil:
    cdef double d[10]
    cdef double d2[10]
    cdef double d3[10]
    cdef int k
    d[0] = 0.0
    for k in range(1, NJ):
        d[k] = a[k]
    jmul(d, d, d2)
    jmul(d2, d, d3)
    cdef double h2 = 0.5 * g2
    cdef double h3 = g3 / 6.0
    c[0] = g0
    for k in range(1, NJ):
        c[k] = g1 * d[k] + h2 * d2[k] + h3 * d3[k]


cdef inline void jrecip(const double* a, double* c) noexcept nogil:
    cdef double r = 1.0 / a[0]
    jcompose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r, c)


cdef inline void jln(const double* a, double* c) noexcept nogil:
    cdef double r = 1.0 / a[0]
    jcompose(a, log(a[0]), r, -r * r, 2.0 * r * r * r, c)


cdef inline void jexp(const double* a, double* c) noexcept nogil:
    cdef double e = exp(a[0])
    jcompose(a, e, e, e, e, c)


cdef int run_tape(const int[:] ops, const int[:] arg0, const int[:] arg1,
                  const double[:] consts, double x, double y,
                  double* slots, double* out) noexcept nogil:
    """Returns -1 on success or the index of the offending instruction."""
    cdef Py_ssize_t n = ops.shape[0]
    cdef Py_ssize_t i
    cdef int k, m, op
    cdef double* r
    cdef double* a
    cdef double* b
    cdef double a0, s, c, e, t, d1, sh
    cdef double tmp[10]
    cdef double tmp2[10]
    for i in range(n):
        op = ops[i]
        r = slots + i * NJ
        if op == 0:
            r[0] = consts[i]
            for k in range(1, NJ):
                r[k] = 0.0
            continue
        if op == 1 or op == 2:
            for k in range(NJ):
                r[k] = 0.0
            if op == 1:
                r[0] = x
                r[1] = 1.0
            else:
                r[0] = y
                r[2] = 1.0
            continue
        a = slots + arg0[i] * NJ
        a0 = a[0]
        if op == 3:
            b = slots + arg1[i] * NJ
            for k in range(NJ):
                r[k] = a[k] + b[k]
        elif op == 4:
            b = slots + arg1[i] * NJ
            for k in range(NJ):
                r[k] = a[k] - b[k]
        elif op == 5:
            jmul(a, slots + arg1[i] * NJ, r)
        elif op == 6:
            b = slots + arg1[i] * NJ
            if b[0] == 0.0:
                return <int>i
            jrecip(b, tmp)
            jmul(a, tmp, r)
        elif op == 7:
            for k in range(NJ):
                r[k] = -a[k]
        elif op == 8:
            m = <int>consts[i]
            if m < 0:
                if a0 == 0.0:
                    return <int>i
                jrecip(a, tmp2)
                m = -m
            else:
                for k in range(NJ):
                    tmp2[k] = a[k]
            for k in range(NJ):
                tmp[k] = 0.0
            tmp[0] = 1.0
            while m > 0:
                jmul(tmp, tmp2, tmp)
                m -= 1
            for k in range(NJ):
                r[k] = tmp[k]
        elif op == 9:
            if a0 <= 0.0:
                return <int>i
            e = consts[i]
            jcompose(a, pow(a0, e), e * pow(a0, e - 1.0),
                     e * (e - 1.0) * pow(a0, e - 2.0),
                     e * (e - 1.0) * (e - 2.0) * pow(a0, e - 3.0), r)
        elif op == 10:
            if a0 <= 0.0:
                return <int>i
            jln(a, tmp)
            jmul(slots + arg1[i] * NJ, tmp, tmp2)
            jexp(tmp2, r)
        elif op == 11:
            if a0 <= 0.0:
                return <int>i
            s = sqrt(a0)
            jcompose(a, s, 0.5 / s, -0.25 / (s * a0), 0.375 / (s * a0 * a0), r)
        elif op == 12:
            if a0 <= 0.0:
                return <int>i
            jln(a, r)
        elif op == 13:
            jexp(a, r)
        elif op == 14:
            s = sin(a0)
            c = cos(a0)
            jcompose(a, s, c, -s, -c, r)
        elif op == 15:
            s = sin(a0)
            c = cos(a0)
            jcompose(a, c, -s, -c, s, r)
        elif op == 16:
            s = sinh(a0)
            c = cosh(a0)
            jcompose(a, s, c, s, c, r)
        elif op == 17:
            s = sinh(a0)
            c = cosh(a0)
            jcompose(a, c, s, c, s, r)
        elif op == 18 or op == 19:
            if op == 18:
                t = tanh(a0)
            else:
                sh = sinh(a0)
                if sh == 0.0:
                    return <int>i
                t = cosh(a0) / sh
            d1 = 1.0 - t * t
            jcompose(a, t, d1, -2.0 * t * d1, (6.0 * t * t - 2.0) * d1, r)
        else:
            return -2
    r = slots + (n - 1) * NJ
    for k in range(NJ):
        out[k] = r[k] * FACT[k]
    return -1


def eval_tape(const int[:] ops, const int[:] arg0, const int[:] arg1,
              const double[:] consts, double x, double y):
    cdef Py_ssize_t n = ops.shape[0]
    res = np.empty(NJ)
    cdef double[:] rv = res
    cdef double* slots = <double*>malloc(n * NJ * sizeof(double))
    cdef int bad
    if slots == NULL:
        raise MemoryError()
    try:
        bad = run_tape(ops, arg0, arg1, consts, x, y, slots, &rv[0])
    finally:
        free(slots)
    if bad == -2:
        raise ValueError("unknown opcode in tape")
    if bad >= 0:
        res[:] = np.nan
    return res, bad


def eval_tape_many(const int[:] ops, const int[:] arg0, const int[:] arg1,
                   const double[:] consts, const double[:] xs, const double[:] ys):
    cdef Py_ssize_t n = ops.shape[0]
    cdef Py_ssize_t npts = xs.shape[0]
    res = np.empty((npts, NJ))
    cdef double[:, ::1] rv = res
    cdef double* slots = <double*>malloc(n * NJ * sizeof(double))
    cdef Py_ssize_t j
    cdef int bad = -1
    if slots == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(npts):
                bad = run_tape(ops, arg0, arg1, consts, xs[j], ys[j], slots, &rv[j, 0])
                if bad != -1:
                    break
    finally:
        free(slots)
    if bad == -2:
        raise ValueError("unknown opcode in tape")
    if bad >= 0:
        return res, <Py_ssize_t>j, bad
    return res, -1, -1


cdef void row_kernel(double x, double y, const double* jet, double* o) noexcept nogil:
    cdef double fx = jet[1], fy = jet[2], fxx = jet[3], fxy = jet[4], fyy = jet[5]
    cdef double fxxx = jet[6], fxxy = jet[7], fxyy = jet[8], fyyy = jet[9]
    cdef double p = fx + 0.5 * y
    cdef double q = fy - 0.5 * x
    cdef double px = fxx, py = fxy + 0.5
    cdef double qx = fxy - 0.5, qy = fyy
    cdef double pxx = fxxx, pxy = fxxy, pyy = fxyy
    cdef double qxx = fxxy, qxy = fxyy, qyy = fyyy

    cdef double E = 1.0 + p * p
    cdef double F = p * q
    cdef double G = 1.0 + q * q
    cdef double D = E + q * q
    cdef double w = sqrt(D)
    cdef double L = (fxx + p * q) / w
    cdef double M = (fxy + 0.5 * (q * q - p * p)) / w
    cdef double N = (fyy - p * q) / w
    cdef double num = G * fxx - 2.0 * F * fxy + E * fyy
    cdef double w3 = D * w
    cdef double H = num / (2.0 * w3)
    cdef double det = fxx * fyy - fxy * fxy + 0.25

    cdef double w_x = (p * px + q * qx) / w
    cdef double w_y = (p * py + q * qy) / w
    cdef double num_x = (2.0 * q * qx * fxx + G * fxxx
                         - 2.0 * (px * q + p * qx) * fxy - 2.0 * F * fxxy
                         + 2.0 * p * px * fyy + E * fxyy)
    cdef double num_y = (2.0 * q * qy * fxx + G * fxxy
                         - 2.0 * (py * q + p * qy) * fxy - 2.0 * F * fxyy
                         + 2.0 * p * py * fyy + E * fyyy)
    cdef double H_x = num_x / (2.0 * w3) - 1.5 * num * w_x / (w3 * w)
    cdef double H_y = num_y / (2.0 * w3) - 1.5 * num * w_y / (w3 * w)

    cdef double g11x = 2.0 * p * px, g11y = 2.0 * p * py
    cdef double g12x = px * q + p * qx, g12y = py * q + p * qy
    cdef double g22x = 2.0 * q * qx, g22y = 2.0 * q * qy
    cdef double Dx = 2.0 * w * w_x
    cdef double Dy = 2.0 * w * w_y
    cdef double i11 = G / D, i12 = -F / D, i22 = E / D
    cdef double a11 = i11 * g11x + i12 * g12x
    cdef double a12 = i11 * g12x + i12 * g22x
    cdef double ix11 = -(a11 * i11 + a12 * i12)
    cdef double ix12 = -(a11 * i12 + a12 * i22)
    cdef double b21 = i12 * g11y + i22 * g12y
    cdef double b22 = i12 * g12y + i22 * g22y
    cdef double iy12 = -(b21 * i11 + b22 * i12)
    cdef double iy22 = -(b21 * i12 + b22 * i22)
    cdef double c1 = ix11 + iy12 + (i11 * Dx + i12 * Dy) / (2.0 * D)
    cdef double c2 = ix12 + iy22 + (i12 * Dx + i22 * Dy) / (2.0 * D)

    cdef double lap1 = -(i11 * pxx + 2.0 * i12 * pxy + i22 * pyy + c1 * px + c2 * py)
    cdef double lap2 = -(i11 * qxx + 2.0 * i12 * qxy + i22 * qyy + c1 * qx + c2 * qy)

    cdef double u = -p, v = -q
    cdef double den = 1.0 + u * u + v * v
    cdef double G111 = -u * (v * v + 1.0) / den
    cdef double G112 = u * u * v / den
    cdef double G122 = -(u * u * u + u) / den
    cdef double G211 = -(v * v * v + v) / den
    cdef double G212 = u * v * v / den
    cdef double G222 = -(u * u + 1.0) * v / den
    cdef double S11 = i11 * px * px + 2.0 * i12 * px * py + i22 * py * py
    cdef double S12 = i11 * px * qx + i12 * (px * qy + py * qx) + i22 * py * qy
    cdef double S22 = i11 * qx * qx + 2.0 * i12 * qx * qy + i22 * qy * qy
    cdef double tau1 = lap1 + G111 * S11 + 2.0 * G112 * S12 + G122 * S22
    cdef double tau2 = lap2 + G211 * S11 + 2.0 * G212 * S12 + G222 * S22

    cdef double hg1 = tau1 + 2.0 * w * H_x - H * (2.0 * q / w - 4.0 * w_x + 4.0 * p * H * D)
    cdef double hg2 = tau2 + 2.0 * w * H_y - H * (-2.0 * p / w - 4.0 * w_y + 4.0 * q * H * D)
    cdef double lhs1 = tau1 + 2.0 * (H_x * w + H * w_x)
    cdef double lhs2 = tau2 + 2.0 * (H_y * w + H * w_y)

    cdef double U = x, V = y
    cdef double m = U - 2.0 * fy
    cdef double n = V + 2.0 * fx
    cdef double k = 4.0 + U * U + 4.0 * fy * (fy - U)
    cdef double A = fxx * k + 4.0 * fyy + n * (2.0 * fxy * m + n * fyy)
    cdef double B1 = ((-6.0 + 4.0 * fxy + n * (2.0 * n * fxy + fxx * m)) * m
                      + n * (4.0 + V * V + 4.0 * fx * (V + fx)) * fyy)
    cdef double B2 = (2.0 * V * (3.0 + 2.0 * fxy)
                      + 4.0 * fx * fx * m * fyy
                      + 4.0 * fx * (3.0 + fxy * (2.0 + U * U + 4.0 * fy * (fy - U)) + V * m * fyy)
                      + m * (fxx * k + V * (2.0 * fxy * m + V * fyy)))

    o[0] = p
    o[1] = q
    o[2] = w
    o[3] = E
    o[4] = F
    o[5] = G
    o[6] = L
    o[7] = M
    o[8] = N
    o[9] = H
    o[10] = -p
    o[11] = -q
    o[12] = det
    o[13] = lap1
    o[14] = lap2
    o[15] = tau1
    o[16] = tau2
    o[17] = H_x
    o[18] = H_y
    o[19] = w_x
    o[20] = w_y
    o[21] = hg1
    o[22] = hg2
    o[23] = lhs1
    o[24] = lhs2
    o[25] = A * B1
    o[26] = -A * B2


def graph_row(double x, double y, const double[:] jet):
    res = np.empty(NROW)
    cdef double[:] rv = res
    row_kernel(x, y, &jet[0], &rv[0])
    return res


def graph_rows(const double[:] xs, const double[:] ys, const double[:, ::1] jets):
    cdef Py_ssize_t n = xs.shape[0]
    res = np.empty((n, NROW))
    cdef double[:, ::1] rv = res
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            row_kernel(xs[j], ys[j], &jets[j, 0], &rv[j, 0])
    return res


cdef inline void geo_accel(double u, double v, double du, double dv,
                           double* au, double* av) noexcept nogil:
    cdef double den = 1.0 + u * u + v * v
    au[0] = (u * (v * v + 1.0) * du * du - 2.0 * u * u * v * du * dv
             + (u * u * u + u) * dv * dv) / den
    av[0] = ((v * v * v + v) * du * du - 2.0 * u * v * v * du * dv
             + (u * u + 1.0) * v * dv * dv) / den


def geodesic_rk4(double u0, double v0, double du0, double dv0, double step, Py_ssize_t nsteps):
    res = np.empty((nsteps + 1, 5))
    cdef double[:, ::1] o = res
    cdef double u = u0, v = v0, du = du0, dv = dv0, h = step
    cdef double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b
    cdef double u2, v2, du2, dv2, u3, v3, du3, dv3, u4, v4, du4, dv4
    cdef Py_ssize_t i
    o[0, 0] = 0.0
    o[0, 1] = u
    o[0, 2] = v
    o[0, 3] = du
    o[0, 4] = dv
    with nogil:
        for i in range(1, nsteps + 1):
            geo_accel(u, v, du, dv, &k1a, &k1b)
            u2 = u + 0.5 * h * du
            v2 = v + 0.5 * h * dv
            du2 = du + 0.5 * h * k1a
            dv2 = dv + 0.5 * h * k1b
            geo_accel(u2, v2, du2, dv2, &k2a, &k2b)
            u3 = u + 0.5 * h * du2
            v3 = v + 0.5 * h * dv2
            du3 = du + 0.5 * h * k2a
            dv3 = dv + 0.5 * h * k2b
            geo_accel(u3, v3, du3, dv3, &k3a, &k3b)
            u4 = u + h * du3
            v4 = v + h * dv3
            du4 = du + h * k3a
            dv4 = dv + h * k3b
            geo_accel(u4, v4, du4, dv4, &k4a, &k4b)
            u += h * (du + 2.0 * du2 + 2.0 * du3 + du4) / 6.0
            v += h * (dv + 2.0 * dv2 + 2.0 * dv3 + dv4) / 6.0
            du += h * (k1a + 2.0 * k2a + 2.0 * k3a + k4a) / 6.0
            dv += h * (k1b + 2.0 * k2b + 2.0 * k3b + k4b) / 6.0
            o[i, 0] = i * h
            o[i, 1] = u
            o[i, 2] = v
            o[i, 3] = du
            o[i, 4] = dv
    return res

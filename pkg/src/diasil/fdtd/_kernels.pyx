# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: initializedcheck=False, language_level=3
"""Compiled FDTD update kernels.

Operation-for-operation mirror of kernels_py (same per-cell expression
trees, main updates and CPML corrections as separate passes) so the two
backends produce bit-identical fields.
"""

import numpy as np

cimport cython


def update_e(double[:, :, ::1] Ex, double[:, :, ::1] Ey, double[:, :, ::1] Ez,
             double[:, :, ::1] Hx, double[:, :, ::1] Hy, double[:, :, ::1] Hz,
             double[:, :, ::1] ce_x, double[:, :, ::1] ce_y, double[:, :, ::1] ce_z,
             double[::1] ikx, double[::1] iky, double[::1] ikz):
    cdef Py_ssize_t nx = Ex.shape[0], ny = Ex.shape[1], nz = Ex.shape[2]
    cdef Py_ssize_t i, j, k
    cdef double iky_j, ikx_i, ikz_k
    with nogil:
        for i in range(nx - 1):
            for j in range(1, ny - 1):
                iky_j = iky[j]
                for k in range(1, nz - 1):
                    Ex[i, j, k] += ce_x[i, j, k] * (
                        (Hz[i, j, k] - Hz[i, j - 1, k]) * iky_j
                        - (Hy[i, j, k] - Hy[i, j, k - 1]) * ikz[k]
                    )
        for i in range(1, nx - 1):
            ikx_i = ikx[i]
            for j in range(ny - 1):
                for k in range(1, nz - 1):
                    Ey[i, j, k] += ce_y[i, j, k] * (
                        (Hx[i, j, k] - Hx[i, j, k - 1]) * ikz[k]
                        - (Hz[i, j, k] - Hz[i - 1, j, k]) * ikx_i
                    )
        for i in range(1, nx - 1):
            ikx_i = ikx[i]
            for j in range(1, ny - 1):
                iky_j = iky[j]
                for k in range(nz - 1):
                    Ez[i, j, k] += ce_z[i, j, k] * (
                        (Hy[i, j, k] - Hy[i - 1, j, k]) * ikx_i
                        - (Hx[i, j, k] - Hx[i, j - 1, k]) * iky_j
                    )


def update_h(double[:, :, ::1] Ex, double[:, :, ::1] Ey, double[:, :, ::1] Ez,
             double[:, :, ::1] Hx, double[:, :, ::1] Hy, double[:, :, ::1] Hz,
             double[::1] ikx, double[::1] iky, double[::1] ikz, double dt):
    cdef Py_ssize_t nx = Ex.shape[0], ny = Ex.shape[1], nz = Ex.shape[2]
    cdef Py_ssize_t i, j, k
    cdef double iky_j, ikx_i
    with nogil:
        for i in range(nx):
            for j in range(ny - 1):
                iky_j = iky[j]
                for k in range(nz - 1):
                    Hx[i, j, k] -= dt * (
                        (Ez[i, j + 1, k] - Ez[i, j, k]) * iky_j
                        - (Ey[i, j, k + 1] - Ey[i, j, k]) * ikz[k]
                    )
        for i in range(nx - 1):
            ikx_i = ikx[i]
            for j in range(ny):
                for k in range(nz - 1):
                    Hy[i, j, k] -= dt * (
                        (Ex[i, j, k + 1] - Ex[i, j, k]) * ikz[k]
                        - (Ez[i + 1, j, k] - Ez[i, j, k]) * ikx_i
                    )
        for i in range(nx - 1):
            ikx_i = ikx[i]
            for j in range(ny - 1):
                iky_j = iky[j]
                for k in range(nz):
                    Hz[i, j, k] -= dt * (
                        (Ey[i + 1, j, k] - Ey[i, j, k]) * ikx_i
                        - (Ex[i, j + 1, k] - Ex[i, j, k]) * iky_j
                    )


def cpml_term_e(double[:, :, ::1] field, double[:, :, ::1] ce,
                double[:, :, ::1] src, double[:, :, ::1] psi,
                double[::1] b, double[::1] c,
                double sign, int d_axis, Py_ssize_t psi_base,
                Py_ssize_t i0, Py_ssize_t i1, Py_ssize_t j0, Py_ssize_t j1,
                Py_ssize_t k0, Py_ssize_t k1):
    """field += sign * ce * psi with psi = b psi + c * backward-diff(src)."""
    cdef Py_ssize_t oi = 0, oj = 0, ok = 0, pi = 0, pj = 0, pk = 0
    cdef Py_ssize_t i, j, k, pos
    cdef double d, p
    if d_axis == 0:
        oi = -1
        pi = psi_base
    elif d_axis == 1:
        oj = -1
        pj = psi_base
    else:
        ok = -1
        pk = psi_base
    with nogil:
        for i in range(i0, i1):
            for j in range(j0, j1):
                for k in range(k0, k1):
                    if d_axis == 0:
                        pos = i
                    elif d_axis == 1:
                        pos = j
                    else:
                        pos = k
                    d = src[i, j, k] - src[i + oi, j + oj, k + ok]
                    p = b[pos] * psi[i - pi, j - pj, k - pk] + c[pos] * d
                    psi[i - pi, j - pj, k - pk] = p
                    field[i, j, k] += sign * ce[i, j, k] * p


def cpml_term_h(double[:, :, ::1] field, double[:, :, ::1] src,
                double[:, :, ::1] psi, double[::1] b, double[::1] c,
                double sign_dt, int d_axis, Py_ssize_t psi_base,
                Py_ssize_t i0, Py_ssize_t i1, Py_ssize_t j0, Py_ssize_t j1,
                Py_ssize_t k0, Py_ssize_t k1):
    """field += sign_dt * psi with psi = b psi + c * forward-diff(src)."""
    cdef Py_ssize_t oi = 0, oj = 0, ok = 0, pi = 0, pj = 0, pk = 0
    cdef Py_ssize_t i, j, k, pos
    cdef double d, p
    if d_axis == 0:
        oi = 1
        pi = psi_base
    elif d_axis == 1:
        oj = 1
        pj = psi_base
    else:
        ok = 1
        pk = psi_base
    with nogil:
        for i in range(i0, i1):
            for j in range(j0, j1):
                for k in range(k0, k1):
                    if d_axis == 0:
                        pos = i
                    elif d_axis == 1:
                        pos = j
                    else:
                        pos = k
                    d = src[i + oi, j + oj, k + ok] - src[i, j, k]
                    p = b[pos] * psi[i - pi, j - pj, k - pk] + c[pos] * d
                    psi[i - pi, j - pj, k - pk] = p
                    field[i, j, k] += sign_dt * p


def accumulate(double complex[:, :, :, :] acc, double[:, :, :] f,
               double[::1] re, double[::1] im):
    """acc[l] += f * (re[l] + i im[l]) for each monitored frequency l."""
    cdef Py_ssize_t L = acc.shape[0]
    cdef Py_ssize_t A = f.shape[0], B = f.shape[1], C = f.shape[2]
    cdef Py_ssize_t l, a, b2, c2
    cdef double complex ph
    with nogil:
        for l in range(L):
            ph = re[l] + 1j * im[l]
            for a in range(A):
                for b2 in range(B):
                    for c2 in range(C):
                        acc[l, a, b2, c2] = acc[l, a, b2, c2] + f[a, b2, c2] * ph

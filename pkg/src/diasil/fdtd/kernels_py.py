"""Pure-numpy FDTD update kernels (fallback backend).

Mirrors the compiled extension in `_kernels.pyx` operation-for-operation so
the two backends produce bit-identical fields: every per-cell expression
keeps the same evaluation tree, and main updates and CPML corrections run
as separate passes in both.

Index ranges (array shape (nx, ny, nz), outermost layer = PEC):

    E component, parallel axis a:  a in [0, n-1), perpendicular in [1, n-1)
    H component, parallel axis a:  a in [0, n),   perpendicular in [0, n-1)

CPML psi slabs along a derivative axis of length n with P pml cells:
    integer-centred derivatives (E updates): lo [1, P], hi [n-P, n-2]
    half-centred derivatives (H updates):    lo [0, P-1], hi [n-P, n-2]
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def _bcast(arr1d: np.ndarray, axis: int) -> np.ndarray:
    shape = [1, 1, 1]
    shape[axis] = arr1d.shape[0]
    return arr1d.reshape(shape)


def _rng_idx(shape, axis, sl, perp):
    """Index tuple with `sl` along `axis` and main-update perpendicular slices."""
    idx = [None, None, None]
    idx[axis] = sl
    for a, s in perp.items():
        idx[a] = s
    return tuple(idx)


def update_e(f, c, src_terms=None):
    """Advance all three E components by one step (main, non-PML part).

    `f` is the field dict, `c` the coefficient bundle (see simulation.py).
    """
    Ex, Ey, Ez = f["Ex"], f["Ey"], f["Ez"]
    Hx, Hy, Hz = f["Hx"], f["Hy"], f["Hz"]
    ikx, iky, ikz = c["ik_int"]

    Ex[:-1, 1:-1, 1:-1] += c["ce_x"][:-1, 1:-1, 1:-1] * (
        (Hz[:-1, 1:-1, 1:-1] - Hz[:-1, :-2, 1:-1]) * _bcast(iky[1:-1], 1)
        - (Hy[:-1, 1:-1, 1:-1] - Hy[:-1, 1:-1, :-2]) * _bcast(ikz[1:-1], 2)
    )
    Ey[1:-1, :-1, 1:-1] += c["ce_y"][1:-1, :-1, 1:-1] * (
        (Hx[1:-1, :-1, 1:-1] - Hx[1:-1, :-1, :-2]) * _bcast(ikz[1:-1], 2)
        - (Hz[1:-1, :-1, 1:-1] - Hz[:-2, :-1, 1:-1]) * _bcast(ikx[1:-1], 0)
    )
    Ez[1:-1, 1:-1, :-1] += c["ce_z"][1:-1, 1:-1, :-1] * (
        (Hy[1:-1, 1:-1, :-1] - Hy[:-2, 1:-1, :-1]) * _bcast(ikx[1:-1], 0)
        - (Hx[1:-1, 1:-1, :-1] - Hx[1:-1, :-2, :-1]) * _bcast(iky[1:-1], 1)
    )


def update_h(f, c):
    """Advance all three H components by one half-step (main, non-PML part)."""
    Ex, Ey, Ez = f["Ex"], f["Ey"], f["Ez"]
    Hx, Hy, Hz = f["Hx"], f["Hy"], f["Hz"]
    ikx, iky, ikz = c["ik_half"]
    dt = c["dt"]

    Hx[:, :-1, :-1] -= dt * (
        (Ez[:, 1:, :-1] - Ez[:, :-1, :-1]) * _bcast(iky[:-1], 1)
        - (Ey[:, :-1, 1:] - Ey[:, :-1, :-1]) * _bcast(ikz[:-1], 2)
    )
    Hy[:-1, :, :-1] -= dt * (
        (Ex[:-1, :, 1:] - Ex[:-1, :, :-1]) * _bcast(ikz[:-1], 2)
        - (Ez[1:, :, :-1] - Ez[:-1, :, :-1]) * _bcast(ikx[:-1], 0)
    )
    Hz[:-1, :-1, :] -= dt * (
        (Ey[1:, :-1, :] - Ey[:-1, :-1, :]) * _bcast(ikx[:-1], 0)
        - (Ex[:-1, 1:, :] - Ex[:-1, :-1, :]) * _bcast(iky[:-1], 1)
    )


def _cpml_term(field, scale, scale_is_array, src, sign, d_axis, stagger, coef,
               psi_lo, psi_hi, perp):
    """One CPML correction: field += sign * scale * psi on both pml slabs.

    psi = b psi + c * d(src)/d(d_axis); backward differences for
    integer-centred ('int', E updates), forward for half-centred ('half').
    """
    n = field.shape[d_axis]
    P = coef.pml
    if stagger == "int":
        b, c = coef.b_int, coef.c_int
        slabs = ((slice(1, P + 1), psi_lo), (slice(n - P, n - 1), psi_hi))
        shift = -1  # backward difference: src[j] - src[j-1]
    else:
        b, c = coef.b_half, coef.c_half
        slabs = ((slice(0, P), psi_lo), (slice(n - P, n - 1), psi_hi))
        shift = +1  # forward difference: src[j+1] - src[j]

    for sl, psi in slabs:
        idx = _rng_idx(field.shape, d_axis, sl, perp)
        if shift < 0:
            other = slice(sl.start - 1, sl.stop - 1)
        else:
            other = slice(sl.start + 1, sl.stop + 1)
        idx_other = _rng_idx(field.shape, d_axis, other, perp)
        if shift < 0:
            diff = src[idx] - src[idx_other]
        else:
            diff = src[idx_other] - src[idx]

        psi_idx = _rng_idx(psi.shape, d_axis, slice(None), perp)
        pv = psi[psi_idx]
        pv *= _bcast(b[sl], d_axis)
        pv += _bcast(c[sl], d_axis) * diff
        if scale_is_array:
            field[idx] += sign * scale[idx] * pv
        else:
            field[idx] += sign * scale * pv


def apply_cpml_e(f, c, psi):
    Hx, Hy, Hz = f["Hx"], f["Hy"], f["Hz"]
    ax, ay, az = c["axes"]
    nx1 = slice(0, -1)
    inner = slice(1, -1)
    # (field, scale, src, sign, d_axis, coef, psi key, perpendicular ranges)
    terms = [
        (f["Ex"], c["ce_x"], Hz, +1.0, 1, ay, "exy", {0: nx1, 2: inner}),
        (f["Ex"], c["ce_x"], Hy, -1.0, 2, az, "exz", {0: nx1, 1: inner}),
        (f["Ey"], c["ce_y"], Hx, +1.0, 2, az, "eyz", {1: nx1, 0: inner}),
        (f["Ey"], c["ce_y"], Hz, -1.0, 0, ax, "eyx", {1: nx1, 2: inner}),
        (f["Ez"], c["ce_z"], Hy, +1.0, 0, ax, "ezx", {2: nx1, 1: inner}),
        (f["Ez"], c["ce_z"], Hx, -1.0, 1, ay, "ezy", {2: nx1, 0: inner}),
    ]
    for field, scale, src, sign, d_axis, coef, key, perp in terms:
        _cpml_term(field, scale, True, src, sign, d_axis, "int", coef,
                   psi[key + "_lo"], psi[key + "_hi"], perp)


def apply_cpml_h(f, c, psi):
    Ex, Ey, Ez = f["Ex"], f["Ey"], f["Ez"]
    ax, ay, az = c["axes"]
    dt = c["dt"]
    full = slice(None)
    n1 = slice(0, -1)
    terms = [
        (f["Hx"], Ez, -1.0, 1, ay, "hxy", {0: full, 2: n1}),
        (f["Hx"], Ey, +1.0, 2, az, "hxz", {0: full, 1: n1}),
        (f["Hy"], Ex, -1.0, 2, az, "hyz", {1: full, 0: n1}),
        (f["Hy"], Ez, +1.0, 0, ax, "hyx", {1: full, 2: n1}),
        (f["Hz"], Ey, -1.0, 0, ax, "hzx", {2: full, 1: n1}),
        (f["Hz"], Ex, +1.0, 1, ay, "hzy", {2: full, 0: n1}),
    ]
    for field, src, sign, d_axis, coef, key, perp in terms:
        _cpml_term(field, dt, False, src, sign, d_axis, "half", coef,
                   psi[key + "_lo"], psi[key + "_hi"], perp)


def accumulate(acc: np.ndarray, field_view: np.ndarray, phases: np.ndarray):
    """acc[l] += field * phases[l] for each monitored frequency l."""
    for l in range(phases.shape[0]):
        acc[l] += field_view * phases[l]

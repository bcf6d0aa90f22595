"""Adapter exposing the compiled kernels behind the same dict-based API as
`kernels_py` (so the driver is backend-agnostic)."""

from __future__ import annotations

import numpy as np

try:
    from . import _kernels

    AVAILABLE = True
except ImportError:  # extension not built
    _kernels = None
    AVAILABLE = False

BACKEND_NAME = "cython"

_AXIS_OF = {"x": 0, "y": 1, "z": 2}


def update_e(f, c):
    _kernels.update_e(
        f["Ex"], f["Ey"], f["Ez"], f["Hx"], f["Hy"], f["Hz"],
        c["ce_x"], c["ce_y"], c["ce_z"],
        c["ik_int"][0], c["ik_int"][1], c["ik_int"][2],
    )


def update_h(f, c):
    _kernels.update_h(
        f["Ex"], f["Ey"], f["Ez"], f["Hx"], f["Hy"], f["Hz"],
        c["ik_half"][0], c["ik_half"][1], c["ik_half"][2], c["dt"],
    )


# term tables mirror kernels_py.apply_cpml_e / apply_cpml_h
_E_TERMS = [
    ("Ex", "ce_x", "Hz", +1.0, 1, "exy", (0, 2)),
    ("Ex", "ce_x", "Hy", -1.0, 2, "exz", (0, 1)),
    ("Ey", "ce_y", "Hx", +1.0, 2, "eyz", (1, 0)),
    ("Ey", "ce_y", "Hz", -1.0, 0, "eyx", (1, 2)),
    ("Ez", "ce_z", "Hy", +1.0, 0, "ezx", (2, 1)),
    ("Ez", "ce_z", "Hx", -1.0, 1, "ezy", (2, 0)),
]
_H_TERMS = [
    ("Hx", "Ez", -1.0, 1, "hxy", (0, 2)),
    ("Hx", "Ey", +1.0, 2, "hxz", (0, 1)),
    ("Hy", "Ex", -1.0, 2, "hyz", (1, 0)),
    ("Hy", "Ez", +1.0, 0, "hyx", (1, 2)),
    ("Hz", "Ey", -1.0, 0, "hzx", (2, 1)),
    ("Hz", "Ex", +1.0, 1, "hzy", (2, 0)),
]


def _ranges(shape, d_axis, sl, par_axis, perp_axis, par_stop_off, perp_lohi):
    """(start, stop) triples for the update region of one CPML term."""
    starts = [0, 0, 0]
    stops = list(shape)
    starts[d_axis] = sl.start
    stops[d_axis] = sl.stop
    stops[par_axis] += par_stop_off
    starts[perp_axis] = perp_lohi[0]
    stops[perp_axis] += perp_lohi[1]
    return starts, stops


def apply_cpml_e(f, c, psi):
    for comp, ce_key, src, sign, d_axis, key, (par_axis, perp_axis) in _E_TERMS:
        field = f[comp]
        src_arr = f[src]
        ce = c[ce_key]
        coef = c["axes"][d_axis]
        n = field.shape[d_axis]
        P = coef.pml
        for sl, psi_arr in (
            (slice(1, P + 1), psi[key + "_lo"]),
            (slice(n - P, n - 1), psi[key + "_hi"]),
        ):
            starts, stops = _ranges(field.shape, d_axis, sl, par_axis, perp_axis, -1, (1, -1))
            _kernels.cpml_term_e(
                field, ce, src_arr, psi_arr, coef.b_int, coef.c_int,
                sign, d_axis, sl.start,
                starts[0], stops[0], starts[1], stops[1], starts[2], stops[2],
            )


def apply_cpml_h(f, c, psi):
    dt = c["dt"]
    for comp, src, sign, d_axis, key, (par_axis, perp_axis) in _H_TERMS:
        field = f[comp]
        src_arr = f[src]
        coef = c["axes"][d_axis]
        n = field.shape[d_axis]
        P = coef.pml
        for sl, psi_arr in (
            (slice(0, P), psi[key + "_lo"]),
            (slice(n - P, n - 1), psi[key + "_hi"]),
        ):
            starts, stops = _ranges(field.shape, d_axis, sl, par_axis, perp_axis, 0, (0, -1))
            _kernels.cpml_term_h(
                field, src_arr, psi_arr, coef.b_half, coef.c_half,
                sign * dt, d_axis, sl.start,
                starts[0], stops[0], starts[1], stops[1], starts[2], stops[2],
            )


def accumulate(acc: np.ndarray, field_view: np.ndarray, phases: np.ndarray):
    _kernels.accumulate(acc, field_view, phases.real.copy(), phases.imag.copy())

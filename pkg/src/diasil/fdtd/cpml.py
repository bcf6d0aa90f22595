"""Convolutional PML coefficient profiles.

Complex-frequency-shifted CPML (recursive-convolution form): inside the
absorbing layer each spatial derivative d/dx is replaced by
(1/kappa) d/dx + psi, with

    psi^{n+1} = b psi^n + c (d f / dx),
    b = exp(-(sigma/kappa + alpha) dt),
    c = sigma (b - 1) / (kappa (sigma + kappa alpha)).

Profiles are polynomially graded from the interior interface to the outer
wall; alpha grades linearly the other way (largest at the interface) to
keep grazing-incidence and evanescent waves absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GRADE_ORDER = 3
KAPPA_MAX = 3.0
# alpha and sigma both scale as 1/cell so that scaling all lengths and
# wavelengths together leaves every update coefficient exactly invariant
ALPHA_FACTOR = 0.015
SIGMA_FACTOR = 1.0


def _profiles(depth: np.ndarray, cell_um: float, sigma_factor: float):
    """sigma, kappa, alpha at fractional depths in [0, 1]."""
    depth = np.clip(depth, 0.0, 1.0)
    sigma_max = sigma_factor * 0.8 * (GRADE_ORDER + 1) / cell_um
    g = depth**GRADE_ORDER
    sigma = sigma_max * g
    kappa = 1.0 + (KAPPA_MAX - 1.0) * g
    alpha = (ALPHA_FACTOR / cell_um) * (1.0 - depth)
    return sigma, kappa, alpha


@dataclass(frozen=True)
class AxisCoefficients:
    """Per-axis 1D CPML/update coefficients.

    inv_kappa_* fold in the 1/cell factor, so `diff * inv_kappa` is the
    scaled derivative used by the main update; b/c arrays are zero-padded
    full length (nonzero only inside the PML) and the psi updates only
    touch the slab index ranges below.
    """

    n: int
    pml: int
    inv_kappa_int: np.ndarray  # at integer positions, length n
    inv_kappa_half: np.ndarray  # at i+1/2 positions, length n
    b_int: np.ndarray
    c_int: np.ndarray  # includes 1/cell
    b_half: np.ndarray
    c_half: np.ndarray

    @property
    def lo_int(self) -> slice:
        """Integer-position slab on the low side (derivative centred there)."""
        return slice(1, self.pml + 1)

    @property
    def hi_int(self) -> slice:
        return slice(self.n - self.pml, self.n)

    @property
    def lo_half(self) -> slice:
        return slice(0, self.pml)

    @property
    def hi_half(self) -> slice:
        return slice(self.n - self.pml, self.n)


def axis_coefficients(
    n: int, pml: int, cell_um: float, dt: float, sigma_factor: float = SIGMA_FACTOR
) -> AxisCoefficients:
    pos_int = np.arange(n, dtype=np.float64)
    pos_half = pos_int + 0.5
    hi_start = float(n - pml)

    def depth(pos):
        return np.maximum(pml - pos, pos - hi_start) / pml

    out = {}
    for tag, pos in (("int", pos_int), ("half", pos_half)):
        sigma, kappa, alpha = _profiles(depth(pos), cell_um, sigma_factor)
        b = np.exp(-(sigma / kappa + alpha) * dt)
        c = np.zeros_like(b)
        nz = sigma > 0
        c[nz] = (
            sigma[nz]
            * (b[nz] - 1.0)
            / (kappa[nz] * (sigma[nz] + kappa[nz] * alpha[nz]))
            / cell_um
        )
        out[tag] = (1.0 / (kappa * cell_um), b, c)

    return AxisCoefficients(
        n=n,
        pml=pml,
        inv_kappa_int=out["int"][0],
        inv_kappa_half=out["half"][0],
        b_int=out["int"][1],
        c_int=out["int"][2],
        b_half=out["half"][1],
        c_half=out["half"][2],
    )

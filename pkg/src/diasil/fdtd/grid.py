"""Yee-grid discretisation and material rasterisation.

Grid convention: a domain of Nx x Ny x Nz cells with lower corner `origin`
(um).  Component positions relative to origin, in cells:

    Ex (i+1/2, j,     k    )     Hx (i,     j+1/2, k+1/2)
    Ey (i,     j+1/2, k    )     Hy (i+1/2, j,     k+1/2)
    Ez (i,     j,     k+1/2)     Hz (i+1/2, j+1/2, k    )

All six field arrays are allocated (Nx, Ny, Nz); the outermost layer is
never updated, which realises a PEC wall behind the absorbing layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..scene import Scene

COURANT_LIMIT_3D = 1.0 / np.sqrt(3.0)


class SimulationError(RuntimeError):
    """Invalid simulation setup."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform-grid discretisation parameters."""

    cell_size_nm: float = 25.0
    domain_extent_um: tuple[float, float, float] = (7.0, 7.0, 6.0)
    pml_cells: int = 10
    courant_factor: float = 0.5

    def __post_init__(self):
        if self.cell_size_nm <= 0:
            raise SimulationError(f"cell size must be positive, got {self.cell_size_nm}")
        if not 0.0 < self.courant_factor < COURANT_LIMIT_3D:
            raise SimulationError(
                f"courant_factor must be in (0, {COURANT_LIMIT_3D:.4f}) for 3D "
                f"stability, got {self.courant_factor}"
            )
        if self.pml_cells < 8:
            raise SimulationError(f"need at least 8 PML cells, got {self.pml_cells}")
        if any(e <= 0 for e in self.domain_extent_um):
            raise SimulationError(f"domain extent must be positive: {self.domain_extent_um}")

    @property
    def cell_um(self) -> float:
        return self.cell_size_nm * 1e-3

    @property
    def shape(self) -> tuple[int, int, int]:
        d = self.cell_um
        return tuple(int(round(e / d)) for e in self.domain_extent_um)

    @property
    def dt(self) -> float:
        return self.courant_factor * self.cell_um


# staggered offsets (units of one cell) per component
OFFSETS = {
    "Ex": (0.5, 0.0, 0.0),
    "Ey": (0.0, 0.5, 0.0),
    "Ez": (0.0, 0.0, 0.5),
    "Hx": (0.0, 0.5, 0.5),
    "Hy": (0.5, 0.0, 0.5),
    "Hz": (0.5, 0.5, 0.0),
}

_SUBSAMPLE = np.array([-1.0 / 3.0, 0.0, 1.0 / 3.0])


def _diamond_fraction_chunk(scene: Scene, xs, ys, zs, cell_um: float):
    """Diamond volume fraction for one x-chunk of component positions."""
    x = xs[:, None, None]
    y = ys[None, :, None]
    z = zs[None, None, :]
    d = scene.signed_distance(x, y, z)
    frac = np.where(d < 0.0, 1.0, 0.0)

    half_diag = 0.5 * np.sqrt(3.0) * cell_um
    cut = np.abs(d) < half_diag
    if np.any(cut):
        ic, jc, kc = np.nonzero(cut)
        px = xs[ic]
        py = ys[jc]
        pz = zs[kc]
        count = np.zeros(px.shape, dtype=np.float64)
        for ox in _SUBSAMPLE * cell_um:
            for oy in _SUBSAMPLE * cell_um:
                for oz in _SUBSAMPLE * cell_um:
                    count += scene.inside_diamond(px + ox, py + oy, pz + oz)
        frac[ic, jc, kc] = count / 27.0
    return frac


def rasterize_inv_eps(
    scene: Scene,
    grid: GridSpec,
    origin: np.ndarray,
    component: str,
    staircase: bool = False,
    chunk: int = 32,
) -> np.ndarray:
    """Per-component 1/eps array, volume-fraction averaged at interfaces.

    Cells cut by the diamond surface get a 27-point sub-sampled diamond
    fraction f and eps = 1 + f (eps_d - 1); `staircase` disables the
    averaging (pure set-membership) for debugging surface-discretisation
    error.
    """
    nx, ny, nz = grid.shape
    d = grid.cell_um
    off = OFFSETS[component]
    xs = origin[0] + (np.arange(nx) + off[0]) * d
    ys = origin[1] + (np.arange(ny) + off[1]) * d
    zs = origin[2] + (np.arange(nz) + off[2]) * d

    eps_d = scene.substrate.permittivity
    eps_a = scene.ambient.permittivity
    out = np.empty((nx, ny, nz), dtype=np.float64)
    for i0 in range(0, nx, chunk):
        i1 = min(i0 + chunk, nx)
        if staircase:
            x = xs[i0:i1, None, None]
            y = ys[None, :, None]
            z = zs[None, None, :]
            frac = scene.inside_diamond(x, y, z).astype(np.float64)
        else:
            frac = _diamond_fraction_chunk(scene, xs[i0:i1], ys, zs, d)
        out[i0:i1] = 1.0 / (eps_a + frac * (eps_d - eps_a))
    return out

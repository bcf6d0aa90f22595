"""Calibrate the vacuum sin^2(theta) far-field check (not shipped)."""
import sys
import time

import numpy as np

from diasil import farfield
from diasil.fdtd import (
    ClosedBoxSpec, DipoleSource, GaussianPulse, GridSpec, PlaneAboveSpec,
    StopCriterion, build_simulation, poynting_flux, run,
)
from diasil.scene import Scene, GeometryKind, Material

cell_nm = float(sys.argv[1]) if len(sys.argv) > 1 else 35.0
half = float(sys.argv[2]) if len(sys.argv) > 2 else 3.2
plane_z = float(sys.argv[3]) if len(sys.argv) > 3 else 0.9

vac = Scene(geometry_kind=GeometryKind.PLANAR, dipole_depth=1000.0,
            substrate=Material(1.0), dipole_orientation=(0, 0, 1.0),
            name="vac").validate()
zlo, zhi = -1.0, plane_z + 0.45 + 10 * cell_nm * 1e-3
grid = GridSpec(cell_size_nm=cell_nm, domain_extent_um=(2*half, 2*half, zhi-zlo),
                pml_cells=10)
src = DipoleSource(position_um=(0, 0, 0), orientation=(0, 0, 1.0),
                   pulse=GaussianPulse.for_band(600, 800))
mons = [PlaneAboveSpec(z_um=plane_z, wavelengths_nm=(700.0,)),
        ClosedBoxSpec(center_um=(0, 0, 0), half_size_um=0.3,
                      wavelengths_nm=(700.0,))]
sim = build_simulation(vac, grid, src, mons,
                       origin=np.array([-half, -half, zlo]))
print("shape", sim.shape)
t0 = time.time()
plane, box = run(sim, StopCriterion(kind="energy", energy_threshold=1e-5,
                                    max_steps=8000))
print(f"steps {sim.steps_run} wall {time.time()-t0:.0f}s")

spec = farfield.angular_spectrum(plane, 700.0)
kx, ky = spec.k_frac_grid
kpar = np.sqrt(kx**2 + ky**2)
for kmax in (0.6, 0.7, 0.8, 0.9):
    mask = (kpar <= kmax) & (spec.power > 0)
    cost = np.sqrt(np.clip(1 - kpar**2, 1e-12, 1.0))
    dens = spec.power / cost
    s2 = kpar**2
    A = float((dens[mask] * s2[mask]).sum() / (s2[mask] ** 2).sum())
    resid = dens[mask] / A - s2[mask]
    print(f"k<= {kmax}: max|dev| = {np.abs(resid).max():.4f}")
total = poynting_flux(box, 700.0)
print("plane/box:", spec.total_plane_power / total,
      "parseval:", spec.total_plane_power / farfield.plane_flux(plane, 700.0))

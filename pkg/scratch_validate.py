"""Scratch validation of the FDTD core on a small vacuum run (not shipped)."""
import time

import numpy as np

from diasil import farfield
from diasil.fdtd import (
    ClosedBoxSpec, DipoleSource, GaussianPulse, GridSpec, PlaneAboveSpec,
    StopCriterion, build_simulation, poynting_flux, run,
)
from diasil.scene import Scene, GeometryKind, Material

# "vacuum": planar scene with index-1 substrate, dipole far below the surface
vac = Scene(
    geometry_kind=GeometryKind.PLANAR,
    dipole_depth=50.0,
    substrate=Material(1.0),
    dipole_orientation=(0.0, 0.0, 1.0),
    name="vacuum",
).validate()

cell_nm = 50.0
lam = (700.0,)
grid = GridSpec(cell_size_nm=cell_nm, domain_extent_um=(4.0, 4.0, 4.0),
                pml_cells=8, courant_factor=0.5)
src = DipoleSource(position_um=(0, 0, 0), orientation=(0, 0, 1.0),
                   pulse=GaussianPulse.for_band(600, 800))
mons = [
    PlaneAboveSpec(z_um=1.0, wavelengths_nm=lam, stride=1),
    ClosedBoxSpec(center_um=(0, 0, 0), half_size_um=0.3, wavelengths_nm=lam),
    ClosedBoxSpec(center_um=(0, 0, 0), half_size_um=0.6, wavelengths_nm=lam,
                  label="outer_box"),
    ClosedBoxSpec(center_um=(0.9, 0.9, 0.9), half_size_um=0.25, wavelengths_nm=lam,
                  label="empty_box"),
]
sim = build_simulation(vac, grid, src, mons)
print("shape:", sim.shape, "dt:", sim.dt, "origin:", sim.origin)

t0 = time.time()
results = run(sim, StopCriterion(kind="energy", energy_threshold=1e-5,
                                 max_steps=4000, check_every=20))
t1 = time.time()
print(f"steps: {sim.steps_run}  wall: {t1-t0:.1f}s "
      f"({(t1-t0)/sim.steps_run*1e3:.1f} ms/step)")

plane, box_in, box_out, box_empty = results
p_in = poynting_flux(box_in, 700.0)
p_out = poynting_flux(box_out, 700.0)
p_empty = poynting_flux(box_empty, 700.0)
print(f"flux inner {p_in:.6e}  outer {p_out:.6e}  ratio {p_out/p_in:.4f}")
print(f"empty-box flux {p_empty:.3e}  (|ratio| {abs(p_empty/p_in):.2e})")

spec = farfield.angular_spectrum(plane, 700.0)
pf = farfield.plane_flux(plane, 700.0)
print(f"plane direct flux {pf:.6e}  spectrum total {spec.total_plane_power:.6e} "
      f"ratio {spec.total_plane_power/pf:.4f}")

eta_up = farfield.collection_efficiency(spec, p_in, 1.0)
print(f"upper-half fraction at NA=1: {eta_up:.4f} (expect ~0.5 for vacuum)")

# sin^2(theta) pattern for the vertical dipole
kx, ky = spec.k_frac_grid
kpar = np.sqrt(kx**2 + ky**2)
mask = kpar <= 0.85
cost = np.sqrt(np.clip(1 - kpar**2, 0.0, 1.0))
dens = np.zeros_like(spec.power)
dens[mask] = spec.power[mask] / cost[mask]  # per-solid-angle (up to consts)
s2 = kpar**2
A = float((dens[mask] * s2[mask]).sum() / (s2[mask] ** 2).sum())
resid = dens[mask] / A - s2[mask]
print(f"sin^2 pattern: A={A:.4e} max|dev|={np.abs(resid).max():.4f} "
      f"(target <= 0.03)")

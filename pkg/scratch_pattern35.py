"""Calibrate the 35nm x-dipole pattern check (not shipped)."""
import pickle
import time

import numpy as np

from diasil import farfield
from diasil.fdtd import (DipoleSource, GaussianPulse, GridSpec, PlaneAboveSpec,
                         StopCriterion, build_simulation, run)
from diasil.scene import GeometryKind, Material, Scene

cell_nm, half, plane_z = 35.0, 5.4, 1.5
wls = tuple(float(w) for w in range(600, 801, 25))
vac = Scene(geometry_kind=GeometryKind.PLANAR, dipole_depth=1000.0,
            substrate=Material(1.0), dipole_orientation=(1.0, 0., 0.),
            name="vac").validate()
zlo = -1.0
zhi = plane_z + 0.45 + 10 * cell_nm * 1e-3
grid = GridSpec(cell_size_nm=cell_nm,
                domain_extent_um=(2 * half, 2 * half, zhi - zlo), pml_cells=10)
src = DipoleSource(position_um=(0, 0, 0), orientation=(1.0, 0., 0.),
                   pulse=GaussianPulse.for_band(600, 800))
mons = [PlaneAboveSpec(z_um=plane_z, wavelengths_nm=wls)]
sim = build_simulation(vac, grid, src, mons,
                       origin=np.array([-half, -half, zlo]))
print("shape", sim.shape, flush=True)
t0 = time.time()
(plane,) = run(sim, StopCriterion(kind="energy", energy_threshold=1e-5,
                                  max_steps=8000))
print("steps", sim.steps_run, "wall", int(time.time() - t0), flush=True)
with open("/tmp/vac_plane_x35.pkl", "wb") as fh:
    pickle.dump({"plane": plane, "half": half}, fh)

bins = np.linspace(-0.9, 0.9, 25)
acc = np.zeros((len(wls), bins.size - 1))
accm = np.zeros_like(acc)
cnt = np.zeros_like(acc)
for li, lam_nm in enumerate(wls):
    spec = farfield.angular_spectrum(plane, lam_nm)
    kx, ky = spec.k_frac_grid
    kz = np.sqrt(np.clip(1 - kx**2 - ky**2, 0, 1))
    dens = spec.power * kz
    model = 1.0 - kx**2
    mask = (np.abs(ky) <= 0.15) & (kx**2 + ky**2 <= 0.85**2) & (kz > 0)
    A = float((dens[mask] * model[mask]).sum() / (model[mask] ** 2).sum())
    which = np.digitize(kx[mask.nonzero()[0], 0] if False else kx[mask], bins) - 1
    dv = dens[mask] / A
    mv = model[mask]
    for b, d_, m_ in zip(which, dv, mv):
        if 0 <= b < bins.size - 1:
            acc[li, b] += d_
            accm[li, b] += m_
            cnt[li, b] += 1
ok = cnt.min(axis=0) > 0
meas = (acc / np.maximum(cnt, 1)).mean(axis=0)[ok]
mod = (accm / np.maximum(cnt, 1)).mean(axis=0)[ok]
centers = (0.5 * (bins[:-1] + bins[1:]))[ok]
devs = meas - mod
for c, m_, md in zip(centers, meas, mod):
    print(f"kx {c:+.3f}: meas {m_:.4f} model {md:.4f} dev {m_-md:+.4f}")
print("max|dev|:", np.abs(devs).max())

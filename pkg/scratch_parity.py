"""Backend parity + speed check (not shipped)."""
import time

import numpy as np

from diasil.fdtd import (
    ClosedBoxSpec, DipoleSource, GaussianPulse, GridSpec, PlaneAboveSpec,
    StopCriterion, build_simulation, run,
)
from diasil.scene import Scene, GeometryKind, Material

vac = Scene(geometry_kind=GeometryKind.PLANAR, dipole_depth=50.0,
            substrate=Material(1.0), dipole_orientation=(1.0, 0, 0),
            name="vac").validate()
grid = GridSpec(cell_size_nm=50.0, domain_extent_um=(3.0, 3.0, 3.0),
                pml_cells=8, courant_factor=0.5)
src = DipoleSource(position_um=(0, 0, 0), orientation=(1.0, 0, 0),
                   pulse=GaussianPulse.for_band(600, 800))
mons = [PlaneAboveSpec(z_um=0.8, wavelengths_nm=(700.0,), stride=1),
        ClosedBoxSpec(center_um=(0, 0, 0), half_size_um=0.25,
                      wavelengths_nm=(700.0,))]
stop = StopCriterion(kind="steps", steps=150)

state = {}
for backend in ("python", "cython"):
    sim = build_simulation(vac, grid, src, mons, backend=backend)
    t0 = time.time()
    res = run(sim, stop)
    dtw = time.time() - t0
    state[backend] = (sim, res, dtw)
    print(f"{backend:7s}: {dtw/150*1e3:7.2f} ms/step")

smax = 0.0
for name in ("Ex", "Ey", "Ez", "Hx", "Hy", "Hz"):
    a = state["python"][0].fields[name]
    b = state["cython"][0].fields[name]
    d = np.abs(a - b).max()
    smax = max(smax, d)
    identical = np.array_equal(a, b)
    print(f"{name}: max|diff| = {d:.3e}  bit-identical: {identical}")

for (ra, rb) in zip(state["python"][1], state["cython"][1]):
    for key in ra.fields:
        d = np.abs(ra.fields[key] - rb.fields[key]).max()
        print(f"monitor {ra.label}/{key}: max|diff| = {d:.3e} "
              f"identical: {np.array_equal(ra.fields[key], rb.fields[key])}")
print("speedup: %.1fx" % (state["python"][2] / state["cython"][2]))

"""Displacement acceptance calibration (not shipped)."""
import time

from diasil.farfield import displacement_sweep
from diasil.scene import preset_scene

scene = preset_scene("fig1c")
for axis in ("x", "y", "z"):
    t0 = time.time()
    out = displacement_sweep(scene, axis, [1.0], cell_size_nm=50.0)
    print(f"axis {axis}: offset 1.0 um -> eta_band = {out[0][1]:.4f} "
          f"({time.time()-t0:.0f}s)", flush=True)

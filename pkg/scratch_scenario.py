"""Scenario calibration runs (not shipped)."""
import sys
import time

from diasil import analytic
from diasil.fdtd import StopCriterion
from diasil.pipeline import run_scene_efficiency
from diasil.scene import preset_scene

name = sys.argv[1] if len(sys.argv) > 1 else "fig1b"
cell = float(sys.argv[2]) if len(sys.argv) > 2 else 50.0

scene = preset_scene(name)
t0 = time.time()
report = run_scene_efficiency(
    scene, cell_size_nm=cell,
    stop=StopCriterion(kind="energy", energy_threshold=1e-5, max_steps=20000),
)
wall = time.time() - t0

if name == "fig1a":
    ana = analytic.planar_collection_efficiency(scene.dipole_orientation, 0.9, 2.42)
else:
    ana = analytic.hemisphere_collection_efficiency(scene.dipole_orientation, 0.9, 2.42)

print(f"scenario {name} cell {cell} nm grid {report.meta['grid_shape']} "
      f"steps {report.meta['steps']} wall {wall:.0f}s")
print(f"{'lambda':>8} {'eta':>9} {'|d_analytic|pp':>14} {'P_tot':>12}")
for w, e, p in zip(report.wavelengths_nm, report.etas, report.total_powers):
    print(f"{w:8.0f} {e:9.4f} {abs(e-ana)*100:14.2f} {p:12.4e}")
print(f"band average: {report.band_average:.4f}   analytic: {ana:.4f}")

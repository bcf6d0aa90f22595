"""Timing comparison of the compiled and pure-python FDTD kernels."""

from __future__ import annotations

import time

from .fdtd import (
    ClosedBoxSpec,
    DipoleSource,
    GaussianPulse,
    GridSpec,
    PlaneAboveSpec,
    StopCriterion,
    available_backends,
    build_simulation,
    run,
)
from .scene import GeometryKind, Material, Scene


def _benchmark_setup(cells_per_side: int):
    cell_nm = 50.0
    extent = cells_per_side * cell_nm * 1e-3
    scene = Scene(
        geometry_kind=GeometryKind.PLANAR,
        dipole_depth=1000.0,
        substrate=Material(1.0),
        name="bench",
    ).validate()
    grid = GridSpec(
        cell_size_nm=cell_nm,
        domain_extent_um=(extent, extent, extent),
        pml_cells=8,
    )
    source = DipoleSource(pulse=GaussianPulse.for_band(600, 800))
    monitors = [
        PlaneAboveSpec(z_um=0.3 * extent - extent / 2, wavelengths_nm=(700.0,),
                       stride=1),
        ClosedBoxSpec(half_size_um=0.2, wavelengths_nm=(700.0,)),
    ]
    return scene, grid, source, monitors


def run_benchmark(cells_per_side: int = 60, steps: int = 60,
                  backends: list[str] | None = None) -> dict:
    """ms/step per backend on an identical small vacuum problem."""
    backends = backends or available_backends()
    scene, grid, source, monitors = _benchmark_setup(cells_per_side)
    out = {}
    for name in backends:
        sim = build_simulation(scene, grid, source, monitors, backend=name)
        run(sim, StopCriterion(kind="steps", steps=5))  # warm-up
        t0 = time.perf_counter()
        run(sim, StopCriterion(kind="steps", steps=steps))
        out[name] = (time.perf_counter() - t0) / steps * 1e3
    return out

import numpy as np
import pytest

from diasil.fdtd import (
    ClosedBoxSpec,
    DipoleSource,
    GaussianPulse,
    GridSpec,
    PlaneAboveSpec,
    StopCriterion,
    build_simulation,
    run,
)
from diasil.scene import GeometryKind, Material, Scene


def vacuum_scene(orientation=(1.0, 0.0, 0.0)) -> Scene:
    """Index-1 'substrate' everywhere: free space with the planar plumbing."""
    return Scene(
        geometry_kind=GeometryKind.PLANAR,
        dipole_depth=1000.0,
        substrate=Material(1.0),
        dipole_orientation=orientation,
        name="vacuum",
    ).validate()


def small_vacuum_sim(
    orientation=(1.0, 0.0, 0.0),
    extent=(3.0, 3.0, 3.0),
    cell_nm=50.0,
    wavelengths=(700.0,),
    plane_z=0.8,
    boxes=((0.0, 0.0, 0.0, 0.25),),
    backend=None,
    stride=1,
):
    scene = vacuum_scene(orientation)
    grid = GridSpec(cell_size_nm=cell_nm, domain_extent_um=extent, pml_cells=8)
    source = DipoleSource(
        position_um=(0.0, 0.0, 0.0),
        orientation=orientation,
        pulse=GaussianPulse.for_band(600.0, 800.0),
    )
    monitors = [PlaneAboveSpec(z_um=plane_z, wavelengths_nm=wavelengths, stride=stride)]
    for n, (cx, cy, cz, h) in enumerate(boxes):
        monitors.append(
            ClosedBoxSpec(center_um=(cx, cy, cz), half_size_um=h,
                          wavelengths_nm=wavelengths, label=f"box{n}")
        )
    return build_simulation(scene, grid, source, monitors, backend=backend)


@pytest.fixture(scope="session")
def vacuum_run():
    """One shared small vacuum run with nested boxes and a far plane."""
    sim = small_vacuum_sim(
        boxes=((0, 0, 0, 0.25), (0, 0, 0, 0.5), (0.7, 0.7, -0.7, 0.2)),
    )
    results = run(sim, StopCriterion(kind="energy", energy_threshold=1e-5,
                                     max_steps=3000))
    return sim, results

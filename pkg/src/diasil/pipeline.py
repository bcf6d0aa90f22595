"""End-to-end simulate -> angular spectrum -> efficiency orchestration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import farfield
from .fdtd import MonitorKind, StopCriterion, build_simulation, run
from .presets import SimulationSetup, scenario_setup
from .scene import Scene


@dataclass(frozen=True)
class EfficiencyReport:
    """Per-wavelength and band-averaged collection efficiencies."""

    scenario: str
    na: float
    wavelengths_nm: tuple
    etas: tuple
    band_average: float
    total_powers: tuple
    plane_powers: tuple
    meta: dict = field(default_factory=dict)

    def eta_at(self, wavelength_nm: float) -> float:
        for w, e in zip(self.wavelengths_nm, self.etas):
            if abs(w - wavelength_nm) < 1e-9:
                return e
        raise KeyError(f"wavelength {wavelength_nm} nm not in report")


def results_by_kind(results):
    out = {}
    for r in results:
        out.setdefault(r.monitor_kind, []).append(r)
    return out


def efficiency_from_results(results, na: float, scenario: str, meta=None) -> EfficiencyReport:
    """Efficiency report from one run's monitor results."""
    from .fdtd import poynting_flux

    by_kind = results_by_kind(results)
    plane = by_kind[MonitorKind.PLANE_ABOVE][0]
    box = by_kind[MonitorKind.CLOSED_BOX][0]

    etas, totals, planes = [], [], []
    for w in plane.wavelengths_nm:
        total = poynting_flux(box, w)
        spec = farfield.angular_spectrum(plane, w)
        etas.append(farfield.collection_efficiency(spec, total, na))
        totals.append(total)
        planes.append(spec.total_plane_power)
    return EfficiencyReport(
        scenario=scenario,
        na=na,
        wavelengths_nm=tuple(float(w) for w in plane.wavelengths_nm),
        etas=tuple(etas),
        band_average=farfield.band_average(
            list(zip(plane.wavelengths_nm, etas))
        ),
        total_powers=tuple(totals),
        plane_powers=tuple(planes),
        meta=dict(meta or {}),
    )


def run_setup(setup: SimulationSetup, stop: StopCriterion | None = None,
              staircase: bool = False, backend: str | None = None):
    """Build and run one setup; returns (monitor results, simulation)."""
    sim = build_simulation(
        setup.scene,
        setup.grid,
        setup.source,
        list(setup.monitors),
        origin=np.asarray(setup.origin),
        staircase=staircase,
        backend=backend,
    )
    results = run(sim, stop)
    return results, sim


def run_scene_efficiency(
    scene: Scene,
    cell_size_nm: float = 25.0,
    stop: StopCriterion | None = None,
    staircase: bool = False,
    backend: str | None = None,
    **setup_kwargs,
) -> EfficiencyReport:
    """Full pipeline for one scene; the displacement sweep's work unit."""
    setup = scenario_setup(scene, cell_size_nm=cell_size_nm, with_map=False,
                           **setup_kwargs)
    results, sim = run_setup(setup, stop=stop, staircase=staircase, backend=backend)
    meta = {
        "cell_size_nm": cell_size_nm,
        "steps": sim.steps_run,
        "grid_shape": sim.shape,
        "dipole_um": tuple(scene.dipole_position),
        "orientation": tuple(scene.dipole_orientation),
    }
    return efficiency_from_results(results, setup.na, scene.name, meta)

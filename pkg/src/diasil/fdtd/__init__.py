"""3D finite-difference time-domain solver on a Yee grid.

Natural unit system: lengths in micrometres, c = eps0 = mu0 = 1, so time is
measured in micrometres of light travel and frequencies in rad/um.

The hot update kernels live in a compiled Cython extension
(`diasil.fdtd._kernels`); a pure-numpy twin (`kernels_py`) is selected at
import when the extension is unavailable (see `backend`).  Both produce
bit-identical fields.
"""

from .backend import ACTIVE_BACKEND, available_backends
from .grid import GridSpec, SimulationError
from .monitors import (
    BoxMonitorResult,
    ClosedBoxSpec,
    MapMonitorResult,
    MapPlaneSpec,
    MonitorKind,
    PlaneAboveSpec,
    PlaneMonitorResult,
    SpectralMonitorResult,
)
from .simulation import (
    InstabilityError,
    Simulation,
    StopCriterion,
    build_simulation,
    field_map,
    poynting_flux,
    run,
)
from .source import DipoleSource, GaussianPulse

__all__ = [
    "ACTIVE_BACKEND",
    "available_backends",
    "GridSpec",
    "SimulationError",
    "InstabilityError",
    "MonitorKind",
    "PlaneAboveSpec",
    "ClosedBoxSpec",
    "MapPlaneSpec",
    "SpectralMonitorResult",
    "PlaneMonitorResult",
    "BoxMonitorResult",
    "MapMonitorResult",
    "DipoleSource",
    "GaussianPulse",
    "Simulation",
    "StopCriterion",
    "build_simulation",
    "run",
    "poynting_flux",
    "field_map",
]

"""Frequency-domain field monitors (running DFT accumulators).

Each monitor contributes a set of recordings; a recording accumulates
`field_slice * exp(i w t) * dt` every step for every monitored wavelength
and is normalised by the source-current spectrum when a run finishes, so
monitor results are per-unit-source-amplitude and source-shape independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

DEFAULT_WAVELENGTHS_NM = tuple(float(w) for w in range(600, 801, 25))


class MonitorKind(str, Enum):
    PLANE_ABOVE = "PlaneAbove"
    CLOSED_BOX = "ClosedBox"
    MAP_PLANE = "MapPlane"


@dataclass(frozen=True)
class PlaneAboveSpec:
    """Transverse plane in the air region above all structure.

    Records tangential E at the plane and tangential H at the two adjacent
    half-planes (so post-processing can co-locate them exactly).  `stride`
    subsamples in x/y; None targets ~50 nm spacing.
    """

    z_um: float
    wavelengths_nm: tuple = DEFAULT_WAVELENGTHS_NM
    stride: int | None = None
    label: str = "plane_above"


@dataclass(frozen=True)
class ClosedBoxSpec:
    """Box around the source; records all six components on a padded cube."""

    center_um: tuple[float, float, float] = (0.0, 0.0, 0.0)
    half_size_um: float = 0.3
    wavelengths_nm: tuple = DEFAULT_WAVELENGTHS_NM
    label: str = "source_box"


@dataclass(frozen=True)
class MapPlaneSpec:
    """y-z field-intensity map plane through a given x."""

    x_um: float = 0.0
    wavelengths_nm: tuple = (700.0,)
    label: str = "yz_map"


@dataclass
class Recording:
    name: str  # key in the result's field dict (e.g. "Hx_lo")
    component: str  # Ex / Ey / Ez / Hx / Hy / Hz
    slices: tuple  # (slice, slice, slice) into the field array
    wavelengths_nm: np.ndarray
    omegas: np.ndarray
    acc: np.ndarray  # complex128, shape (n_lambda, *slab_shape)
    is_h: bool

    @classmethod
    def create(cls, component, slices, wavelengths_nm, shape, name=None):
        wl = np.asarray(sorted(float(w) for w in wavelengths_nm))
        omegas = 2.0 * np.pi / (wl * 1e-3)
        return cls(
            name=name or component,
            component=component,
            slices=slices,
            wavelengths_nm=wl,
            omegas=omegas,
            acc=np.zeros((wl.size, *shape), dtype=np.complex128),
            is_h=component.startswith("H"),
        )


@dataclass
class SpectralMonitorResult:
    """Normalised frequency-domain fields on a monitor surface."""

    monitor_kind: MonitorKind
    label: str
    wavelengths_nm: np.ndarray
    fields: dict  # name -> complex array (n_lambda, ...)
    cell_um: float
    meta: dict = field(default_factory=dict)

    def lambda_index(self, wavelength_nm: float) -> int:
        i = int(np.argmin(np.abs(self.wavelengths_nm - wavelength_nm)))
        if abs(self.wavelengths_nm[i] - wavelength_nm) > 1e-9:
            raise KeyError(
                f"wavelength {wavelength_nm} nm not monitored; "
                f"have {list(self.wavelengths_nm)}"
            )
        return i

    def field_at(self, name: str, wavelength_nm: float) -> np.ndarray:
        return self.fields[name][self.lambda_index(wavelength_nm)]


class PlaneMonitorResult(SpectralMonitorResult):
    pass


class BoxMonitorResult(SpectralMonitorResult):
    pass


class MapMonitorResult(SpectralMonitorResult):
    pass


_RESULT_CLS = {
    MonitorKind.PLANE_ABOVE: PlaneMonitorResult,
    MonitorKind.CLOSED_BOX: BoxMonitorResult,
    MonitorKind.MAP_PLANE: MapMonitorResult,
}


class BoundMonitor:
    """A monitor spec resolved onto a concrete grid."""

    def __init__(self, kind, label, recordings, cell_um, meta):
        self.kind = kind
        self.label = label
        self.recordings = recordings
        self.cell_um = cell_um
        self.meta = meta

    def finalize(self, jnorm: dict, dt: float) -> SpectralMonitorResult:
        fields = {}
        wl = self.recordings[0].wavelengths_nm
        for rec in self.recordings:
            norm = np.array([jnorm[w] for w in rec.wavelengths_nm])
            fields[rec.name] = rec.acc * dt / norm[(...,) + (None,) * (rec.acc.ndim - 1)]
        return _RESULT_CLS[self.kind](
            monitor_kind=self.kind,
            label=self.label,
            wavelengths_nm=wl,
            fields=fields,
            cell_um=self.cell_um,
            meta=self.meta,
        )

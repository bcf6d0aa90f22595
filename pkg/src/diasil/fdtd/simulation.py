"""Simulation assembly and the time-stepping driver."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..scene import Scene
from . import backend as backend_mod
from .cpml import AxisCoefficients, axis_coefficients
from .grid import OFFSETS, GridSpec, SimulationError, rasterize_inv_eps
from .monitors import (
    BoundMonitor,
    BoxMonitorResult,
    ClosedBoxSpec,
    MapMonitorResult,
    MapPlaneSpec,
    MonitorKind,
    PlaneAboveSpec,
    Recording,
    SpectralMonitorResult,
)
from .source import DipoleSource


class InstabilityError(RuntimeError):
    """Field divergence detected during time stepping."""


@dataclass(frozen=True)
class StopCriterion:
    """Either a fixed step count or a field-energy decay threshold."""

    kind: str = "energy"  # "energy" | "steps"
    energy_threshold: float = 1e-5
    steps: int = 0
    max_steps: int = 50000
    check_every: int = 20

    def __post_init__(self):
        if self.kind not in ("energy", "steps"):
            raise ValueError(f"stop kind must be 'energy' or 'steps', got {self.kind}")
        if self.kind == "steps" and self.steps <= 0:
            raise ValueError("fixed-step stop needs steps > 0")


FIELD_NAMES = ("Ex", "Ey", "Ez", "Hx", "Hy", "Hz")
_PSI_KEYS_E = ("exy", "exz", "eyx", "eyz", "ezx", "ezy")
_PSI_KEYS_H = ("hxy", "hxz", "hyx", "hyz", "hzx", "hzy")
# derivative axis for each psi key (second letter of the suffix)
_PSI_AXIS = {k: "xyz".index(k[2]) for k in _PSI_KEYS_E + _PSI_KEYS_H}


class Simulation:
    """Materialised Yee grid, coefficients, monitors and source.

    Exclusively owned by `run` while stepping; monitor results are
    immutable afterwards.
    """

    def __init__(self, scene, grid, source, origin, monitors, backend,
                 coeffs, psi_shapes, src_points, wavelengths):
        self.scene: Scene = scene
        self.grid: GridSpec = grid
        self.source: DipoleSource = source
        self.origin = origin
        self.monitors: list[BoundMonitor] = monitors
        self.backend = backend
        self.coeffs = coeffs
        self.shape = grid.shape
        self.src_points = src_points
        self.wavelengths_nm = wavelengths
        self.fields = {name: np.zeros(self.shape) for name in FIELD_NAMES}
        self.psi = {k: np.zeros(s) for k, s in psi_shapes.items()}
        self.steps_run = 0

    @property
    def dt(self) -> float:
        return self.coeffs["dt"]

    def reset(self):
        for arr in self.fields.values():
            arr[:] = 0.0
        for arr in self.psi.values():
            arr[:] = 0.0
        for mon in self.monitors:
            for rec in mon.recordings:
                rec.acc[:] = 0.0
        self.steps_run = 0

    def field_energy(self) -> float:
        """Total EM field energy, up to the constant cell-volume factor."""
        f, c = self.fields, self.coeffs
        dt = c["dt"]
        u = 0.0
        for comp, ce in (("Ex", "ce_x"), ("Ey", "ce_y"), ("Ez", "ce_z")):
            arr = f[comp]
            u += float(np.sum(arr * arr / c[ce])) * dt
        for comp in ("Hx", "Hy", "Hz"):
            arr = f[comp]
            u += float(np.sum(arr * arr))
        return 0.5 * u

    def peak_field(self) -> float:
        return max(float(np.max(np.abs(self.fields[n]))) for n in FIELD_NAMES)


def _psi_shape(shape, axis, thickness):
    s = list(shape)
    s[axis] = thickness
    return tuple(s)


def _align_origin(origin, position, orientation, cell):
    """Shift origin (< one cell) so the dipole lands on a Yee E-edge."""
    dominant = int(np.argmax(np.abs(orientation)))
    comp = "E" + "xyz"[dominant]
    off = OFFSETS[comp]
    origin = np.asarray(origin, dtype=float).copy()
    for a in range(3):
        idx = round((position[a] - origin[a]) / cell - off[a])
        origin[a] = position[a] - (idx + off[a]) * cell
    return origin


def _component_index(position, origin, cell, comp):
    off = OFFSETS[comp]
    return tuple(
        int(round((position[a] - origin[a]) / cell - off[a])) for a in range(3)
    )


def _check_interior(grid: GridSpec, idx, what: str, axes=(0, 1, 2)):
    n = grid.shape
    p = grid.pml_cells
    for a in axes:
        if not p <= idx[a] < n[a] - p:
            raise SimulationError(
                f"{what} at grid index {idx} lies inside the PML "
                f"(axis {'xyz'[a]}, interior range [{p}, {n[a] - p}))"
            )


def build_simulation(
    scene: Scene,
    grid: GridSpec,
    source: DipoleSource,
    monitors: list,
    origin=None,
    staircase: bool = False,
    backend: str | None = None,
) -> Simulation:
    """Rasterise a scene onto a Yee grid and bind monitors and source.

    `origin` is the scene coordinate of the domain's lower corner; by
    default the dipole is centred.  It is nudged by less than one cell so
    the dipole lands exactly on a Yee edge of its dominant component.
    """
    shape = grid.shape
    cell = grid.cell_um
    dt = grid.dt
    pos = np.asarray(source.position_um, dtype=float)

    if not bool(scene.inside_diamond(*pos)):
        raise SimulationError(f"source position {tuple(pos)} is not inside the substrate")

    if origin is None:
        origin = pos - 0.5 * np.asarray(grid.domain_extent_um)
    origin = _align_origin(origin, pos, source.orientation, cell)

    axes = tuple(
        axis_coefficients(shape[a], grid.pml_cells, cell, dt) for a in range(3)
    )
    coeffs = {
        "dt": dt,
        "cell": cell,
        "axes": axes,
        "ik_int": tuple(ax.inv_kappa_int for ax in axes),
        "ik_half": tuple(ax.inv_kappa_half for ax in axes),
        "ce_x": dt * rasterize_inv_eps(scene, grid, origin, "Ex", staircase),
        "ce_y": dt * rasterize_inv_eps(scene, grid, origin, "Ey", staircase),
        "ce_z": dt * rasterize_inv_eps(scene, grid, origin, "Ez", staircase),
    }

    p = grid.pml_cells
    psi_shapes = {}
    for key in _PSI_KEYS_E:
        a = _PSI_AXIS[key]
        psi_shapes[key + "_lo"] = _psi_shape(shape, a, p)
        psi_shapes[key + "_hi"] = _psi_shape(shape, a, p - 1)
    for key in _PSI_KEYS_H:
        a = _PSI_AXIS[key]
        psi_shapes[key + "_lo"] = _psi_shape(shape, a, p)
        psi_shapes[key + "_hi"] = _psi_shape(shape, a, p - 1)

    # source injection points: one Yee edge per nonzero orientation component
    src_points = []
    for a in range(3):
        w = float(source.orientation[a])
        if abs(w) > 1e-12:
            comp = "E" + "xyz"[a]
            idx = _component_index(pos, origin, cell, comp)
            _check_interior(grid, idx, "source")
            src_points.append((comp, idx, w))

    # wavelength union for the source-spectrum normalisation
    wl_union = sorted({float(w) for m in monitors for w in m.wavelengths_nm})
    lam_max = (max(wl_union) if wl_union else 800.0) * 1e-3

    # the structured surface needs half a wavelength of air before the PML
    # (no constraint when substrate and ambient match: no interface exists)
    has_interface = scene.substrate.permittivity != scene.ambient.permittivity
    z_top_interior = origin[2] + (shape[2] - p) * cell
    if has_interface and scene.surface_top + 0.5 * lam_max > z_top_interior:
        raise SimulationError(
            f"domain too small: surface top {scene.surface_top} um + "
            f"lambda/2 clearance exceeds interior ceiling {z_top_interior:.3f} um"
        )

    bound = [_bind_monitor(m, grid, origin, pos) for m in monitors]
    kern = backend_mod.get_backend(backend)
    return Simulation(
        scene, grid, source, origin, bound, kern, coeffs, psi_shapes,
        src_points, wl_union,
    )


def _bind_monitor(spec, grid: GridSpec, origin, dipole_pos) -> BoundMonitor:
    cell = grid.cell_um
    shape = grid.shape
    if isinstance(spec, PlaneAboveSpec):
        k = int(round((spec.z_um - origin[2]) / cell))
        _check_interior(grid, (grid.pml_cells, grid.pml_cells, k), "plane monitor", axes=(2,))
        # ~100 nm sampling is ample (Nyquist k far above k0 at 600-800 nm)
        stride = spec.stride or max(1, int(round(0.1 / cell)))
        sx = slice(0, shape[0], stride)
        sy = slice(0, shape[1], stride)
        nxs = len(range(*sx.indices(shape[0])))
        nys = len(range(*sy.indices(shape[1])))
        kk = slice(k, k + 1)
        km = slice(k - 1, k)
        recs = [
            Recording.create("Ex", (sx, sy, kk), spec.wavelengths_nm, (nxs, nys, 1)),
            Recording.create("Ey", (sx, sy, kk), spec.wavelengths_nm, (nxs, nys, 1)),
            Recording.create("Hx", (sx, sy, km), spec.wavelengths_nm, (nxs, nys, 1), name="Hx_lo"),
            Recording.create("Hx", (sx, sy, kk), spec.wavelengths_nm, (nxs, nys, 1), name="Hx_hi"),
            Recording.create("Hy", (sx, sy, km), spec.wavelengths_nm, (nxs, nys, 1), name="Hy_lo"),
            Recording.create("Hy", (sx, sy, kk), spec.wavelengths_nm, (nxs, nys, 1), name="Hy_hi"),
        ]
        meta = {
            "z_um": origin[2] + k * cell,
            "spacing_um": stride * cell,
            "stride": stride,
            "x0_um": origin[0],
            "y0_um": origin[1],
            "dipole_um": tuple(dipole_pos),
        }
        return BoundMonitor(MonitorKind.PLANE_ABOVE, spec.label, recs, cell, meta)

    if isinstance(spec, ClosedBoxSpec):
        c = np.asarray(spec.center_um, dtype=float)
        h = float(spec.half_size_um)
        lo = [int(round((c[a] - h - origin[a]) / cell)) for a in range(3)]
        hi = [int(round((c[a] + h - origin[a]) / cell)) for a in range(3)]
        _check_interior(grid, [v - 1 for v in lo], "box monitor")
        _check_interior(grid, [v + 1 for v in hi], "box monitor")
        sl = tuple(slice(lo[a] - 1, hi[a] + 2) for a in range(3))
        sshape = tuple(hi[a] - lo[a] + 3 for a in range(3))
        recs = [
            Recording.create(comp, sl, spec.wavelengths_nm, sshape)
            for comp in FIELD_NAMES
        ]
        meta = {
            "node_lo": tuple(lo),
            "node_hi": tuple(hi),
            "pad": 1,
            "center_um": tuple(c),
            "half_size_um": h,
        }
        return BoundMonitor(MonitorKind.CLOSED_BOX, spec.label, recs, cell, meta)

    if isinstance(spec, MapPlaneSpec):
        i = int(round((spec.x_um - origin[0]) / cell))
        _check_interior(grid, (i, grid.pml_cells, grid.pml_cells), "map plane", axes=(0,))
        si = slice(i, i + 1)
        sall = slice(None)
        sshape = (1, shape[1], shape[2])
        recs = [
            Recording.create(comp, (si, sall, sall), spec.wavelengths_nm, sshape)
            for comp in ("Ex", "Ey", "Ez")
        ]
        meta = {
            "x_um": origin[0] + i * cell,
            "y0_um": origin[1],
            "z0_um": origin[2],
        }
        return BoundMonitor(MonitorKind.MAP_PLANE, spec.label, recs, cell, meta)

    raise SimulationError(f"unknown monitor spec {spec!r}")


def run(sim: Simulation, stop: StopCriterion | None = None) -> list[SpectralMonitorResult]:
    """Leap-frog time stepping with per-step DFT accumulation.

    Deterministic: a fresh (or reset) state is stepped with a fixed
    operation order, so repeated runs are bit-identical.
    """
    stop = stop or StopCriterion()
    sim.reset()
    kern = sim.backend
    f, c, psi = sim.fields, sim.coeffs, sim.psi
    dt = sim.dt
    pulse = sim.source.pulse

    wl_union = np.asarray(sim.wavelengths_nm)
    omega_union = 2.0 * math.pi / (wl_union * 1e-3)
    jnorm_acc = np.zeros(wl_union.size, dtype=np.complex128)

    e_recs, h_recs = [], []
    for mon in sim.monitors:
        for rec in mon.recordings:
            (h_recs if rec.is_h else e_recs).append(rec)

    peak_energy = 0.0
    peak_field = 0.0
    n_steps = stop.steps if stop.kind == "steps" else stop.max_steps

    for n in range(n_steps):
        t_h = (n + 0.5) * dt
        t_e = (n + 1.0) * dt

        kern.update_h(f, c)
        kern.apply_cpml_h(f, c, psi)
        for rec in h_recs:
            phases = np.exp(1j * rec.omegas * t_h)
            kern.accumulate(rec.acc, f[rec.component][rec.slices], phases)

        kern.update_e(f, c)
        kern.apply_cpml_e(f, c, psi)
        s_t = pulse(t_h)
        for comp, idx, w in sim.src_points:
            f[comp][idx] -= c["ce_" + comp[1]][idx] * (w * s_t)
        for rec in e_recs:
            phases = np.exp(1j * rec.omegas * t_e)
            kern.accumulate(rec.acc, f[rec.component][rec.slices], phases)

        jnorm_acc += s_t * np.exp(1j * omega_union * t_h)
        sim.steps_run = n + 1

        if (n + 1) % stop.check_every == 0 or n + 1 == n_steps:
            u = sim.field_energy()
            if not math.isfinite(u):
                raise InstabilityError(f"non-finite field energy at step {n + 1}")
            pf = sim.peak_field()
            if peak_field > 0.0 and pf > 1e6 * peak_field:
                raise InstabilityError(
                    f"field magnitude exploded at step {n + 1} "
                    f"({pf:.3e} > 1e6 x historical peak {peak_field:.3e})"
                )
            peak_field = max(peak_field, pf)
            peak_energy = max(peak_energy, u)
            if (
                stop.kind == "energy"
                and t_e > pulse.duration
                and peak_energy > 0.0
                and u < stop.energy_threshold * peak_energy
            ):
                break

    jnorm_acc *= dt
    mags = np.abs(jnorm_acc)
    if mags.size and mags.min() < 1e-3 * mags.max():
        bad = wl_union[int(np.argmin(mags))]
        raise SimulationError(
            f"source pulse spectrum too weak at {bad} nm "
            f"(|J| ratio {mags.min() / mags.max():.2e} < 1e-3)"
        )
    jnorm = {float(w): jnorm_acc[i] for i, w in enumerate(wl_union)}
    return [mon.finalize(jnorm, dt) for mon in sim.monitors]


# -- monitor post-processing -------------------------------------------------

_FACE_PERM = {
    "x": ((1, 2, 0), ("Ey", "Ez", "Hy", "Hz")),
    "y": ((2, 0, 1), ("Ez", "Ex", "Hz", "Hx")),
    "z": ((0, 1, 2), ("Ex", "Ey", "Hx", "Hy")),
}


def _face_flux(res: BoxMonitorResult, lam: float, axis: str, node: int) -> float:
    """Poynting flux through one box face in the +axis direction.

    Fields are interpolated to face-cell centres; the transpose maps
    (tangential1, tangential2, normal) so one formula serves all faces.
    """
    perm, (e1n, e2n, h1n, h2n) = _FACE_PERM[axis]
    E1 = np.transpose(res.field_at(e1n, lam), perm)
    E2 = np.transpose(res.field_at(e2n, lam), perm)
    H1 = np.transpose(res.field_at(h1n, lam), perm)
    H2 = np.transpose(res.field_at(h2n, lam), perm)
    a = res.meta["pad"]
    lo = res.meta["node_lo"]
    hi = res.meta["node_hi"]
    order = {"x": (1, 2), "y": (2, 0), "z": (0, 1)}[axis]
    b1 = a + hi[order[0]] - lo[order[0]]
    b2 = a + hi[order[1]] - lo[order[1]]
    s1 = slice(a, b1)
    s1p = slice(a + 1, b1 + 1)
    s2 = slice(a, b2)
    s2p = slice(a + 1, b2 + 1)
    nb = node

    e1c = 0.5 * (E1[s1, s2, nb] + E1[s1, s2p, nb])
    e2c = 0.5 * (E2[s1, s2, nb] + E2[s1p, s2, nb])
    h1c = 0.25 * (
        H1[s1, s2, nb - 1] + H1[s1, s2, nb]
        + H1[s1p, s2, nb - 1] + H1[s1p, s2, nb]
    )
    h2c = 0.25 * (
        H2[s1, s2, nb - 1] + H2[s1, s2, nb]
        + H2[s1, s2p, nb - 1] + H2[s1, s2p, nb]
    )
    s = 0.5 * np.real(e1c * np.conj(h2c) - e2c * np.conj(h1c))
    return float(np.sum(s)) * res.cell_um**2


def poynting_flux(res: BoxMonitorResult, wavelength_nm: float) -> float:
    """Net outward power through a closed-box monitor at one wavelength."""
    if res.monitor_kind is not MonitorKind.CLOSED_BOX:
        raise ValueError("poynting_flux needs a ClosedBox monitor result")
    a = res.meta["pad"]
    lo = res.meta["node_lo"]
    hi = res.meta["node_hi"]
    total = 0.0
    for ax_i, ax in enumerate("xyz"):
        nb_lo = a
        nb_hi = a + hi[ax_i] - lo[ax_i]
        total += _face_flux(res, wavelength_nm, ax, nb_hi)
        total -= _face_flux(res, wavelength_nm, ax, nb_lo)
    return total


def field_map(res: MapMonitorResult, wavelength_nm: float) -> np.ndarray:
    """|E|^2 on the y-z map plane, normalised to its own maximum."""
    if res.monitor_kind is not MonitorKind.MAP_PLANE:
        raise ValueError("field_map needs a MapPlane monitor result")
    total = None
    for comp in ("Ex", "Ey", "Ez"):
        arr = res.field_at(comp, wavelength_nm)[0]
        mag = np.abs(arr) ** 2
        total = mag if total is None else total + mag
    peak = float(total.max())
    if peak > 0:
        total /= peak
    return total

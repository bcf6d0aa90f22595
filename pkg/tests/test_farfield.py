import numpy as np
import pytest

from conftest import small_vacuum_sim

from diasil import farfield
from diasil.fdtd import StopCriterion, poynting_flux, run
from diasil.fdtd.monitors import MonitorKind, PlaneMonitorResult


def synthetic_plane_wave(theta_index: int = 0, n: int = 64, cell: float = 0.05,
                         lam_nm: float = 700.0) -> PlaneMonitorResult:
    """Plane monitor holding one s-polarised plane wave on the Yee layout.

    Propagation direction (sin t, 0, cos t) with sin t = theta_index * lam / L,
    E along y; samples live at their true staggered offsets so the k-space
    co-location phases are exercised.
    """
    lam = lam_nm * 1e-3
    L = n * cell
    k0 = 2 * np.pi / lam
    st = theta_index * lam / L
    assert st < 1.0
    ct = np.sqrt(1.0 - st * st)
    kx, kz = k0 * st, k0 * ct

    x_nodes = np.arange(n) * cell
    y_dummy = np.zeros(n)

    def wave(offsets):
        ox, oy, oz = offsets
        xs = x_nodes + ox
        phase = np.exp(1j * (kx * xs))[:, None] * np.ones(n)[None, :]
        return phase * np.exp(1j * kz * oz)

    # E = E0 y-hat, H = (k-hat x E) = E0 (-ct, 0, st) under eta = 1
    fields = {
        "Ex": 0.0 * wave((0.5 * cell, 0.0, 0.0))[..., None],
        "Ey": 1.0 * wave((0.0, 0.5 * cell, 0.0))[..., None],
        "Hx_lo": -ct * wave((0.0, 0.5 * cell, -0.5 * cell))[..., None],
        "Hx_hi": -ct * wave((0.0, 0.5 * cell, +0.5 * cell))[..., None],
        "Hy_lo": 0.0 * wave((0.5 * cell, 0.0, -0.5 * cell))[..., None],
        "Hy_hi": 0.0 * wave((0.5 * cell, 0.0, +0.5 * cell))[..., None],
    }
    return PlaneMonitorResult(
        monitor_kind=MonitorKind.PLANE_ABOVE,
        label="synthetic",
        wavelengths_nm=np.array([lam_nm]),
        fields={k: v[None, ...] for k, v in fields.items()},
        cell_um=cell,
        meta={"spacing_um": cell, "z_um": 0.0, "stride": 1,
              "x0_um": 0.0, "y0_um": 0.0},
    )


class TestAngularSpectrumSynthetic:
    def test_normal_wave_concentrates_at_k0(self):
        plane = synthetic_plane_wave(0)
        spec = farfield.angular_spectrum(plane, 700.0)
        i, j = np.unravel_index(np.argmax(spec.power), spec.power.shape)
        assert abs(spec.kx_frac[i]) < 1e-9
        assert abs(spec.ky_frac[j]) < 1e-9
        # all power in the single on-axis cell
        assert spec.power[i, j] == pytest.approx(spec.power.sum(), rel=1e-9)

    def test_oblique_wave_lands_on_its_k_cell(self):
        plane = synthetic_plane_wave(2)
        spec = farfield.angular_spectrum(plane, 700.0)
        i, j = np.unravel_index(np.argmax(spec.power), spec.power.shape)
        expect = 2 * (700e-3) / (64 * 0.05)
        assert spec.kx_frac[i] == pytest.approx(expect, abs=1e-9)
        assert spec.power[i, j] == pytest.approx(spec.power.sum(), rel=1e-9)

    def test_oblique_flux_value(self):
        # Sz of a unit s-wave at angle t is cos(t)/2 per unit area
        plane = synthetic_plane_wave(3)
        spec = farfield.angular_spectrum(plane, 700.0)
        st = 3 * (700e-3) / (64 * 0.05)
        area = (64 * 0.05) ** 2
        # spectral path is exact (staggering compensated in k-space)
        assert spec.power.sum() == pytest.approx(
            0.5 * np.sqrt(1 - st * st) * area, rel=1e-6
        )
        # real-space estimator is second-order in k d: a few % at this angle
        assert farfield.plane_flux(plane, 700.0) == pytest.approx(
            spec.power.sum(), rel=0.05
        )

    def test_collection_steps_at_wave_angle(self):
        plane = synthetic_plane_wave(4)
        spec = farfield.angular_spectrum(plane, 700.0)
        st = 4 * (700e-3) / (64 * 0.05)
        assert farfield.collection_efficiency(spec, spec.power.sum(), st * 1.05) \
            == pytest.approx(1.0, rel=1e-9)
        assert farfield.collection_efficiency(spec, spec.power.sum(), st * 0.95) \
            == pytest.approx(0.0, abs=1e-12)


class TestCollectionEfficiency:
    def test_monotone_in_na(self, vacuum_run):
        _, results = vacuum_run
        plane = [r for r in results if r.monitor_kind is MonitorKind.PLANE_ABOVE][0]
        box = [r for r in results if r.label == "box0"][0]
        spec = farfield.angular_spectrum(plane, 700.0)
        total = poynting_flux(box, 700.0)
        etas = [farfield.collection_efficiency(spec, total, na)
                for na in (0.2, 0.4, 0.6, 0.8, 1.0)]
        assert all(b >= a for a, b in zip(etas, etas[1:]))
        assert all(0.0 <= e <= 1.02 for e in etas)

    def test_parseval_consistency(self, vacuum_run):
        # total integrated spectrum vs direct plane flux within 3%
        _, results = vacuum_run
        plane = [r for r in results if r.monitor_kind is MonitorKind.PLANE_ABOVE][0]
        spec = farfield.angular_spectrum(plane, 700.0)
        direct = farfield.plane_flux(plane, 700.0)
        assert spec.total_plane_power == pytest.approx(direct, rel=0.03)

    def test_spectrum_nonnegative_and_propagating_only(self, vacuum_run):
        _, results = vacuum_run
        plane = [r for r in results if r.monitor_kind is MonitorKind.PLANE_ABOVE][0]
        spec = farfield.angular_spectrum(plane, 700.0)
        assert spec.power.min() >= 0.0
        kx, ky = spec.k_frac_grid
        assert spec.power[kx**2 + ky**2 >= 1.0].max() == 0.0

    def test_bad_total_power_rejected(self):
        plane = synthetic_plane_wave(0)
        spec = farfield.angular_spectrum(plane, 700.0)
        with pytest.raises(farfield.FarfieldError):
            farfield.collection_efficiency(spec, 0.0, 0.9)
        with pytest.raises(farfield.FarfieldError):
            farfield.collection_efficiency(spec, 1.0, 1.5)


class TestBandAverage:
    def test_single_sample(self):
        assert farfield.band_average([(700.0, 0.3)]) == 0.3

    def test_arithmetic_mean(self):
        assert farfield.band_average([(600.0, 0.2), (800.0, 0.4)]) == pytest.approx(0.3)

    def test_constant_list(self):
        assert farfield.band_average([(w, 0.056) for w in range(600, 801, 25)]) \
            == pytest.approx(0.056)

    def test_bounded_by_min_max(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            etas = rng.uniform(0, 1, size=9)
            avg = farfield.band_average(list(zip(range(9), etas)))
            assert etas.min() <= avg <= etas.max()

    def test_empty_rejected(self):
        with pytest.raises(farfield.FarfieldError):
            farfield.band_average([])

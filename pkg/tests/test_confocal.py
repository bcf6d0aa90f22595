import math

import numpy as np
import pytest

from diasil import confocal
from diasil.confocal import (
    FWHM_SIGMA_RATIO,
    FitError,
    GaussianFit,
    ImagingContext,
    LineScan,
    effective_na,
    fit_gaussian_linescan,
    image_to_real,
    real_fwhm,
    real_to_image,
    theoretical_fwhm,
)

SIL_CTX = ImagingContext(objective_na=0.9, medium_index=2.42, sil_present=True)
PLANAR_CTX = ImagingContext(objective_na=0.9, medium_index=2.42, sil_present=False)


class TestEffectiveNa:
    def test_sil_multiplies_by_index(self):
        assert effective_na(SIL_CTX) == pytest.approx(2.178, abs=1e-12)

    def test_no_sil_passthrough(self):
        assert effective_na(PLANAR_CTX) == 0.9

    def test_index_one_medium(self):
        ctx = ImagingContext(objective_na=1.0, medium_index=1.0, sil_present=True)
        assert effective_na(ctx) == 1.0

    def test_exact_multiplicativity(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            na = rng.uniform(0.1, 1.0)
            n = rng.uniform(1.0, 3.0)
            ctx = ImagingContext(objective_na=na, medium_index=n, sil_present=True)
            assert effective_na(ctx) == na * n  # exact float product


class TestTheoreticalFwhm:
    def test_sil_system_value(self):
        # 0.37 * 532 / 2.178 = 90.38 nm (reported as "= 90 nm")
        assert theoretical_fwhm(532.0, 2.178) == pytest.approx(90.4, abs=0.1)

    def test_bare_objective(self):
        assert theoretical_fwhm(532.0, 0.9) == pytest.approx(218.7, abs=0.1)

    def test_algebraic_identity(self):
        assert theoretical_fwhm(532.0, 0.37 * 532.0) == pytest.approx(1.0, abs=1e-12)

    def test_homogeneity(self):
        base = theoretical_fwhm(600.0, 1.1)
        assert theoretical_fwhm(1200.0, 1.1) == pytest.approx(2 * base, rel=1e-12)
        assert theoretical_fwhm(600.0, 2.2) == pytest.approx(base / 2, rel=1e-12)


class TestMagnification:
    def test_image_242_is_real_1um(self):
        lat, _ = image_to_real(SIL_CTX, 2.42)
        assert lat == pytest.approx(1.0, abs=1e-12)

    def test_image_1um_is_real_041(self):
        lat, _ = image_to_real(SIL_CTX, 1.0)
        assert lat == pytest.approx(0.413, abs=5e-4)

    def test_longitudinal_is_index_squared(self):
        _, lon = image_to_real(SIL_CTX, 0.0, 5.8564)
        assert lon == pytest.approx(1.0, abs=1e-12)

    def test_round_trip_identity(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            lat, lon = rng.uniform(0.01, 10.0, size=2)
            l2, z2 = image_to_real(SIL_CTX, *real_to_image(SIL_CTX, lat, lon))
            assert l2 == pytest.approx(lat, rel=1e-12)
            assert z2 == pytest.approx(lon, rel=1e-12)

    def test_identity_without_sil(self):
        assert image_to_real(PLANAR_CTX, 1.7, 2.3) == (1.7, 2.3)


def _gauss(x, amp, c, s, off):
    return amp * np.exp(-((x - c) ** 2) / (2 * s * s)) + off


class TestGaussianFit:
    def test_fwhm_sigma_constant(self):
        assert FWHM_SIGMA_RATIO == pytest.approx(2.35482, abs=1e-5)
        fit = GaussianFit(1, 0, 0.1, 0, 0, 0, 0, 0)
        assert fit.fwhm / fit.sigma == pytest.approx(
            2 * math.sqrt(2 * math.log(2)), abs=1e-12
        )

    def test_noiseless_recovery(self):
        x = np.linspace(-1.0, 1.0, 81)
        scan = LineScan(x, _gauss(x, 120.0, 0.07, 0.123, 5.0))
        fit = fit_gaussian_linescan(scan)
        assert fit.sigma == pytest.approx(0.123, abs=1e-6)
        assert fit.center == pytest.approx(0.07, abs=1e-6)
        assert fit.amplitude == pytest.approx(120.0, rel=1e-6)
        assert fit.offset == pytest.approx(5.0, abs=1e-4)

    def test_residuals_zero_for_true_gaussian(self):
        x = np.linspace(-0.8, 0.8, 61)
        y = _gauss(x, 40.0, -0.1, 0.2, 2.0)
        fit = fit_gaussian_linescan(LineScan(x, y))
        model = _gauss(x, fit.amplitude, fit.center, fit.sigma, fit.offset)
        assert np.abs(model - y).max() < 1e-6

    def test_sil_fwhm_289nm_maps_to_real_119nm(self):
        # synthesise a scan whose fitted FWHM is 289 nm
        sigma = 0.289 / FWHM_SIGMA_RATIO
        x = np.linspace(-1.0, 1.0, 101)
        fit = fit_gaussian_linescan(LineScan(x, _gauss(x, 100.0, 0.0, sigma, 1.0)))
        assert fit.fwhm * 1e3 == pytest.approx(289.0, abs=0.01)
        real, _ = real_fwhm(SIL_CTX, fit)
        assert real * 1e3 == pytest.approx(119.4, abs=0.1)

    def test_flat_data_rejected(self):
        x = np.linspace(0, 1, 11)
        with pytest.raises(FitError):
            fit_gaussian_linescan(LineScan(x, np.full(11, 3.0)))

    def test_too_few_points_rejected(self):
        with pytest.raises(FitError):
            fit_gaussian_linescan(LineScan([0, 1, 2, 3], [0, 1, 0.5, 0.2]))

    def test_monte_carlo_coverage(self):
        # 5% noise, 100 repeats: true sigma in the 95% CI in >= 90 runs
        rng = np.random.default_rng(12345)
        x = np.linspace(-1.0, 1.0, 101)
        true_sigma = 0.15
        clean = _gauss(x, 100.0, 0.0, true_sigma, 10.0)
        hits = 0
        for _ in range(100):
            noisy = clean + rng.normal(0.0, 0.05 * clean.max(), size=x.size)
            fit = fit_gaussian_linescan(LineScan(x, np.clip(noisy, 0, None)))
            if abs(fit.sigma - true_sigma) <= 1.96 * fit.sigma_err:
                hits += 1
        assert hits >= 90

    def test_linescan_validation(self):
        with pytest.raises(ValueError):
            LineScan([0.0, 0.0, 1.0], [1, 2, 3])  # not strictly increasing
        with pytest.raises(ValueError):
            LineScan([0.0, 1.0], [1.0, -2.0])  # negative counts

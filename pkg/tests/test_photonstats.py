import numpy as np
import pytest

from diasil import photonstats as ps


def _hist(c, rho=1.0):
    tau = np.arange(-10.0, 10.5, 1.0)[: len(c)]
    return ps.G2Histogram(tau, np.asarray(c, dtype=float), rho)


class TestG2Correction:
    def test_rho_one_is_identity(self):
        c = np.array([1.0, 0.7, 0.2, 0.7, 1.0])
        out = ps.background_correct_g2(_hist(c, 1.0))
        assert np.array_equal(out, c)

    def test_pure_background_floor_maps_to_zero(self):
        rho = 0.6
        c = np.full(5, 1.0 - rho**2)
        out = ps.background_correct_g2(_hist(c, rho))
        assert np.allclose(out, 0.0, atol=1e-15)

    def test_hand_computed_value(self):
        # rho = 0.8, c = 0.5: (0.5 - 0.36) / 0.64 = 0.21875
        out = ps.background_correct_g2(_hist([0.5], 0.8))
        assert out[0] == pytest.approx(0.21875, abs=1e-12)

    def test_round_trip_inversion(self):
        rng = np.random.default_rng(9)
        for _ in range(25):
            rho = rng.uniform(0.05, 1.0)
            c_corr = rng.uniform(-0.1, 2.0, size=21)
            c = ps.uncorrect_g2(c_corr, rho)
            # forward map can push values below 0 for extreme rho; clip input
            if np.any(c < 0):
                continue
            back = ps.background_correct_g2(_hist(c, rho))
            assert np.allclose(back, c_corr, atol=1e-12)

    def test_negative_values_preserved(self):
        out = ps.background_correct_g2(_hist([0.0], 0.9))
        assert out[0] < 0.0  # below the background floor stays negative

    def test_rho_zero_rejected(self):
        with pytest.raises(ps.AnalysisError):
            _hist([1.0], 0.0)


class TestClassifier:
    def test_poissonian_not_single(self):
        tau = np.linspace(-10, 10, 21)
        single, dip = ps.classify_single_emitter(tau, np.ones(21))
        assert not single and dip == 1.0

    def test_ideal_single(self):
        tau = np.linspace(-10, 10, 21)
        c = np.ones(21)
        c[10] = 0.0
        single, dip = ps.classify_single_emitter(tau, c)
        assert single and dip == 0.0

    def test_boundary_below_threshold(self):
        tau = np.linspace(-10, 10, 21)
        c = np.ones(21)
        c[10] = 0.49
        single, dip = ps.classify_single_emitter(tau, c)
        assert single and dip == pytest.approx(0.49)

    def test_window_catches_offset_dip(self):
        tau = np.linspace(-10, 10, 21)
        c = np.ones(21)
        c[12] = 0.1  # dip two bins away from tau = 0
        single, _ = ps.classify_single_emitter(tau, c, window_bins=2)
        assert single
        single_narrow, _ = ps.classify_single_emitter(tau, c, window_bins=1)
        assert not single_narrow

    def test_empty_rejected(self):
        with pytest.raises(ps.AnalysisError):
            ps.classify_single_emitter(np.array([]), np.array([]))


def _series(i_sat, p_sat, b, powers=None, bg_noise=None):
    p = np.asarray(powers if powers is not None else np.linspace(0.05, 6.0, 10))
    total = i_sat * p / (p + p_sat) + b * p
    return ps.SaturationSeries(p, total, b * p if bg_noise is None else b * p + bg_noise)


class TestSaturationFit:
    def test_noiseless_recovery(self):
        fit = ps.fit_saturation(_series(345.0, 1.0, 5.0))
        assert fit.i_sat_kcps == pytest.approx(345.0, rel=1e-3)
        assert fit.p_sat_mw == pytest.approx(1.0, rel=1e-3)
        assert fit.background_slope == pytest.approx(5.0, rel=1e-3)

    def test_recovery_grid(self):
        # documented parameter grid for the 0.1% noiseless-recovery property
        for i_sat in (34.5, 345.0):
            for p_sat in (0.4, 1.0, 2.5):
                for b in (0.0, 5.0, 20.0):
                    fit = ps.fit_saturation(_series(i_sat, p_sat, b))
                    assert fit.i_sat_kcps == pytest.approx(i_sat, rel=1e-3)
                    assert fit.p_sat_mw == pytest.approx(p_sat, rel=1e-3)

    def test_half_saturation_point(self):
        fit = ps.fit_saturation(_series(200.0, 1.5, 0.0))
        i_half = fit.i_sat_kcps * fit.p_sat_mw / (fit.p_sat_mw + fit.p_sat_mw)
        assert i_half == pytest.approx(100.0, rel=1e-3)

    def test_initial_slope(self):
        i_sat, p_sat, b = 300.0, 1.2, 4.0
        fit = ps.fit_saturation(_series(i_sat, p_sat, b))
        p = 1e-6
        slope = (fit.i_sat_kcps * p / (p + fit.p_sat_mw) + fit.background_slope * p) / p
        assert slope == pytest.approx(i_sat / p_sat + b, rel=1e-3)

    def test_floating_background_path(self):
        series = ps.SaturationSeries(
            np.linspace(0.05, 6.0, 12),
            345.0 * np.linspace(0.05, 6.0, 12) / (np.linspace(0.05, 6.0, 12) + 1.0)
            + 5.0 * np.linspace(0.05, 6.0, 12),
        )
        fit = ps.fit_saturation(series, fit_background_separately=False)
        assert fit.i_sat_kcps == pytest.approx(345.0, rel=1e-3)
        assert fit.background_slope == pytest.approx(5.0, rel=1e-3)

    def test_insufficient_points(self):
        with pytest.raises(ps.AnalysisError):
            ps.fit_saturation(_series(100, 1, 0, powers=np.array([0.1, 0.5, 1.0])))

    def test_span_warning_flag(self):
        fit = ps.fit_saturation(_series(345.0, 1.0, 5.0))
        assert fit.p_max_exceeds_p_sat


class TestEnhancement:
    def test_paper_pair(self):
        a = ps.fit_saturation(_series(345.0, 1.0, 5.0))
        b = ps.fit_saturation(_series(34.5, 1.0, 15.0))
        ratio, _ = ps.enhancement_factor(a, b)
        assert ratio == pytest.approx(10.0, rel=1e-3)

    def test_identical_fits(self):
        a = ps.fit_saturation(_series(120.0, 0.8, 2.0))
        ratio, err = ps.enhancement_factor(a, a)
        assert ratio == 1.0
        assert err >= 0.0

    def test_cohort_ratios(self):
        # the five reported enhancement factors from synthetic pairs
        reference = ps.fit_saturation(_series(30.0, 1.0, 3.0))
        for factor in (10.0, 8.0, 8.0, 6.0, 3.6):
            fit = ps.fit_saturation(_series(30.0 * factor, 1.0, 3.0))
            ratio, _ = ps.enhancement_factor(fit, reference)
            assert ratio == pytest.approx(factor, rel=2e-3)

    def test_scale_invariance(self):
        p = np.linspace(0.05, 6.0, 10)
        for k in (0.5, 3.0, 17.0):
            a1 = ps.fit_saturation(_series(345.0, 1.0, 5.0))
            a2 = ps.fit_saturation(
                ps.SaturationSeries(p, k * (345.0 * p / (p + 1.0) + 5.0 * p),
                                    k * 5.0 * p)
            )
            b1 = ps.fit_saturation(_series(34.5, 0.7, 2.0))
            b2 = ps.fit_saturation(
                ps.SaturationSeries(p, k * (34.5 * p / (p + 0.7) + 2.0 * p),
                                    k * 2.0 * p)
            )
            r1, _ = ps.enhancement_factor(a1, b1)
            r2, _ = ps.enhancement_factor(a2, b2)
            assert r2 == pytest.approx(r1, rel=1e-6)


class TestBandFraction:
    def test_uniform_spectrum(self):
        spec = ps.Spectrum(np.linspace(600, 800, 201), np.ones(201))
        frac = ps.band_fraction(spec, (630.0, 700.0))
        assert frac == pytest.approx(0.35, abs=1e-12)

    def test_full_support_is_one(self):
        spec = ps.Spectrum(np.linspace(600, 800, 51), np.random.default_rng(1).uniform(0.5, 2, 51))
        assert ps.band_fraction(spec, (600.0, 800.0)) == pytest.approx(1.0, abs=1e-12)

    def test_monotone_in_band_width(self):
        spec = ps.Spectrum(np.linspace(600, 800, 101),
                           np.random.default_rng(2).uniform(0.1, 1.0, 101))
        widths = [(660, 680), (650, 700), (630, 720), (610, 780), (600, 800)]
        fracs = [ps.band_fraction(spec, b) for b in widths]
        assert all(b >= a for a, b in zip(fracs, fracs[1:]))

    def test_band_outside_support_clipped(self):
        spec = ps.Spectrum(np.linspace(600, 800, 11), np.ones(11))
        assert ps.band_fraction(spec, (500.0, 600.0)) == 0.0

    def test_projected_rate(self):
        # 345 kcps at 70% collection projects to ~493 kcps
        assert ps.project_rate(345.0, 0.70) == pytest.approx(492.857, abs=1e-3)
        assert abs(ps.project_rate(345.0, 0.70) - 493.0) < 1.0

    def test_zero_spectrum_rejected(self):
        spec = ps.Spectrum(np.linspace(600, 800, 11), np.zeros(11))
        with pytest.raises(ps.AnalysisError):
            ps.band_fraction(spec, (630, 700))


class TestBackgroundRatio:
    def test_identical_series(self):
        s = _series(100.0, 1.0, 4.0)
        assert ps.background_ratio(s, s, 2.0) == pytest.approx(1.0)

    def test_three_times_background(self):
        p = np.linspace(0.1, 5.0, 9)
        sil = ps.SaturationSeries(p, np.ones(9), 2.0 * p)
        planar = ps.SaturationSeries(p, np.ones(9), 6.0 * p)
        assert ps.background_ratio(planar, sil, 2.0) == pytest.approx(3.0, abs=1e-12)

    def test_linear_interpolation_exact(self):
        p = np.array([0.0, 1.0, 4.0])
        a = ps.SaturationSeries(p, np.ones(3), 2.0 * p)
        b = ps.SaturationSeries(p, np.ones(3), 6.0 * p)
        assert ps.background_ratio(b, a, 2.0) == pytest.approx(3.0, abs=1e-12)

    def test_extrapolation_rejected(self):
        s = _series(100.0, 1.0, 4.0)
        with pytest.raises(ps.AnalysisError):
            ps.background_ratio(s, s, 100.0)

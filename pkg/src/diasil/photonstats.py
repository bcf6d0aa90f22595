"""Photon-statistics analysis for single-emitter characterisation.

Covers the intensity-correlation background correction
c_corr = (c - (1 - rho^2)) / rho^2 (rho = signal fraction S/(S+B)),
single-emitter classification from the antibunching dip, saturation-curve
fitting I(P) = I_sat P / (P + P_sat) + b P, enhancement factors between
emitters, and spectral band fractions with projected count rates.

All fits are deterministic given identical inputs and iteration caps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit


class AnalysisError(ValueError):
    """Invalid analysis input."""


class FitError(RuntimeError):
    """Fit failed to converge."""


@dataclass(frozen=True)
class G2Histogram:
    """Normalised coincidence histogram with its signal fraction rho."""

    delays_ns: np.ndarray
    coincidences: np.ndarray
    signal_fraction: float = 1.0

    def __post_init__(self):
        tau = np.asarray(self.delays_ns, dtype=float)
        c = np.asarray(self.coincidences, dtype=float)
        if tau.ndim != 1 or tau.shape != c.shape:
            raise AnalysisError("delays and coincidences must be 1D, equal length")
        if not np.all(np.diff(tau) > 0):
            raise AnalysisError("delays must be strictly increasing")
        if np.any(c < 0):
            raise AnalysisError("coincidences must be non-negative")
        if not 0.0 < self.signal_fraction <= 1.0:
            raise AnalysisError(
                f"signal fraction must be in (0, 1], got {self.signal_fraction}"
            )
        object.__setattr__(self, "delays_ns", tau)
        object.__setattr__(self, "coincidences", c)


def signal_fraction(signal: float, background: float) -> float:
    """rho = S / (S + B) from fitted signal and background rates."""
    if signal <= 0 or background < 0:
        raise AnalysisError("need signal > 0 and background >= 0")
    return signal / (signal + background)


def background_correct_g2(hist: G2Histogram) -> np.ndarray:
    """Remove Poissonian background coincidences from a normalised g2.

    With signal fraction rho, measured c relates to the emitter's g2 by
    c = rho^2 g2 + (1 - rho^2); this inverts it.  Noise can push corrected
    values slightly negative; they are preserved, not clamped.
    """
    rho2 = hist.signal_fraction**2
    return (hist.coincidences - (1.0 - rho2)) / rho2


def uncorrect_g2(corrected: np.ndarray, signal_fraction: float) -> np.ndarray:
    """Inverse of `background_correct_g2` (used by round-trip checks)."""
    rho2 = signal_fraction**2
    return rho2 * np.asarray(corrected, dtype=float) + (1.0 - rho2)


def classify_single_emitter(
    delays_ns: np.ndarray, corrected: np.ndarray, window_bins: int = 2
) -> tuple[bool, float]:
    """Single-emitter verdict from the corrected zero-delay dip.

    dip = min over +-window_bins around the bin nearest tau = 0 (detector
    jitter smears the true zero-delay bin); a dip below 0.5 cannot be
    produced by more than one emitter.
    """
    tau = np.asarray(delays_ns, dtype=float)
    c = np.asarray(corrected, dtype=float)
    if tau.size == 0:
        raise AnalysisError("empty histogram")
    i0 = int(np.argmin(np.abs(tau)))
    lo = max(0, i0 - window_bins)
    hi = min(tau.size, i0 + window_bins + 1)
    dip = float(np.min(c[lo:hi]))
    return dip < 0.5, dip


@dataclass(frozen=True)
class SaturationSeries:
    """Count rate vs excitation power, with nearby-point background."""

    powers_mw: np.ndarray
    total_kcps: np.ndarray
    background_kcps: np.ndarray | None = None

    def __post_init__(self):
        p = np.asarray(self.powers_mw, dtype=float)
        t = np.asarray(self.total_kcps, dtype=float)
        if p.ndim != 1 or p.shape != t.shape:
            raise AnalysisError("powers and counts must be 1D, equal length")
        if not np.all(np.diff(p) > 0) or np.any(p < 0):
            raise AnalysisError("powers must be non-negative, strictly increasing")
        if np.any(t < 0):
            raise AnalysisError("counts must be non-negative")
        b = self.background_kcps
        if b is not None:
            b = np.asarray(b, dtype=float)
            if b.shape != p.shape or np.any(b < 0):
                raise AnalysisError("background must match powers and be >= 0")
        object.__setattr__(self, "powers_mw", p)
        object.__setattr__(self, "total_kcps", t)
        object.__setattr__(self, "background_kcps", b)


@dataclass(frozen=True)
class SaturationFit:
    i_sat_kcps: float
    p_sat_mw: float
    background_slope: float
    i_sat_err: float
    p_sat_err: float
    background_slope_err: float
    p_max_exceeds_p_sat: bool


def _saturation_model(p, i_sat, p_sat, b):
    return i_sat * p / (p + p_sat) + b * p


def fit_saturation(
    series: SaturationSeries, fit_background_separately: bool = True
) -> SaturationFit:
    """Fit I(P) = I_sat P / (P + P_sat) + b P to a saturation series.

    When the series carries a background column (and
    `fit_background_separately`), b is pre-fit to it as a line through the
    origin and held fixed; otherwise b floats with the other parameters.
    """
    p, total = series.powers_mw, series.total_kcps
    if p.size < 4:
        raise AnalysisError("need at least 4 points to fit a saturation curve")

    # crude initialisation: knee near where I reaches half its top value
    i0 = float(total.max())
    half = i0 / 2.0
    above = np.nonzero(total >= half)[0]
    p0 = float(p[above[0]]) if above.size else float(p[p.size // 2])
    p0 = max(p0, 1e-6)

    if fit_background_separately and series.background_kcps is not None:
        bg, pw = series.background_kcps, p
        denom = float((pw * pw).sum())
        b_fixed = float((pw * bg).sum() / denom) if denom > 0 else 0.0
        b_err = 0.0
        if pw.size > 1 and denom > 0:
            resid = bg - b_fixed * pw
            b_err = float(
                np.sqrt((resid**2).sum() / (pw.size - 1) / denom)
            )
        try:
            popt, pcov = curve_fit(
                lambda pp, i_sat, p_sat: _saturation_model(pp, i_sat, p_sat, b_fixed),
                p,
                total,
                p0=[i0, p0],
                maxfev=20000,
            )
        except RuntimeError as exc:
            raise FitError(f"saturation fit did not converge: {exc}") from exc
        perr = np.sqrt(np.diag(pcov))
        i_sat, p_sat = popt
        slope, slope_err = b_fixed, b_err
        errs = (float(perr[0]), float(perr[1]), slope_err)
    else:
        try:
            popt, pcov = curve_fit(
                _saturation_model, p, total, p0=[i0, p0, 0.0], maxfev=20000
            )
        except RuntimeError as exc:
            raise FitError(f"saturation fit did not converge: {exc}") from exc
        perr = np.sqrt(np.diag(pcov))
        i_sat, p_sat, slope = popt
        errs = (float(perr[0]), float(perr[1]), float(perr[2]))

    if i_sat <= 0 or p_sat <= 0:
        raise FitError(
            f"unphysical saturation fit (I_sat = {i_sat}, P_sat = {p_sat})"
        )
    return SaturationFit(
        i_sat_kcps=float(i_sat),
        p_sat_mw=float(p_sat),
        background_slope=float(slope),
        i_sat_err=errs[0],
        p_sat_err=errs[1],
        background_slope_err=errs[2],
        p_max_exceeds_p_sat=bool(p.max() > p_sat),
    )


def enhancement_factor(
    fit_a: SaturationFit, fit_b: SaturationFit
) -> tuple[float, float]:
    """I_sat ratio a/b with propagated uncertainty."""
    if fit_b.i_sat_kcps <= 0:
        raise AnalysisError("reference I_sat must be positive")
    ratio = fit_a.i_sat_kcps / fit_b.i_sat_kcps
    rel = float(
        np.hypot(
            fit_a.i_sat_err / fit_a.i_sat_kcps, fit_b.i_sat_err / fit_b.i_sat_kcps
        )
    )
    return ratio, ratio * rel


@dataclass(frozen=True)
class Spectrum:
    wavelengths_nm: np.ndarray
    intensities: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.wavelengths_nm, dtype=float)
        s = np.asarray(self.intensities, dtype=float)
        if w.ndim != 1 or w.shape != s.shape or w.size < 2:
            raise AnalysisError("need matching 1D wavelength/intensity arrays")
        if not np.all(np.diff(w) > 0):
            raise AnalysisError("wavelengths must be strictly increasing")
        if np.any(s < 0):
            raise AnalysisError("intensities must be non-negative")
        object.__setattr__(self, "wavelengths_nm", w)
        object.__setattr__(self, "intensities", s)


def band_fraction(spec: Spectrum, band: tuple[float, float]) -> float:
    """Fraction of the spectrum's trapezoidal integral inside a band.

    Band edges falling between samples are handled by linear interpolation,
    so piecewise-linear spectra integrate exactly.
    """
    lo, hi = band
    if hi <= lo:
        raise AnalysisError(f"band must satisfy lo < hi, got {band}")
    w, s = spec.wavelengths_nm, spec.intensities
    total = float(np.trapezoid(s, w))
    if total <= 0:
        raise AnalysisError("spectrum integrates to zero")
    lo = max(lo, float(w[0]))
    hi = min(hi, float(w[-1]))
    if hi <= lo:
        return 0.0
    inner = w[(w > lo) & (w < hi)]
    xs = np.concatenate([[lo], inner, [hi]])
    ys = np.interp(xs, w, s)
    return float(np.trapezoid(ys, xs) / total)


def project_rate(rate_kcps: float, fraction: float) -> float:
    """Count rate expected if the band fraction were collected in full."""
    if not 0.0 < fraction <= 1.0:
        raise AnalysisError(f"fraction must be in (0, 1], got {fraction}")
    return rate_kcps / fraction


def background_ratio(
    series_a: SaturationSeries, series_b: SaturationSeries, power_mw: float
) -> float:
    """Interpolated background(a) / background(b) at one pump power."""
    for s in (series_a, series_b):
        if s.background_kcps is None:
            raise AnalysisError("both series need background counts")
        if not s.powers_mw[0] <= power_mw <= s.powers_mw[-1]:
            raise AnalysisError(
                f"power {power_mw} mW outside measured range "
                f"[{s.powers_mw[0]}, {s.powers_mw[-1]}]"
            )
    bg_a = float(np.interp(power_mw, series_a.powers_mw, series_a.background_kcps))
    bg_b = float(np.interp(power_mw, series_b.powers_mw, series_b.background_kcps))
    if bg_b <= 0:
        raise AnalysisError("reference background is zero at this power")
    return bg_a / bg_b

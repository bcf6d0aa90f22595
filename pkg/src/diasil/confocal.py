"""Confocal imaging arithmetic and Gaussian line-scan fitting.

A hemispherical lens in the sample's own material multiplies the effective
numerical aperture by the medium index, magnifies confocal scans by the
same factor laterally and by its square longitudinally, and shrinks the
theoretical excitation spot (FWHM = 0.37 lambda_ex / NA).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

#: FWHM / sigma for a Gaussian; the single source of truth for the package.
FWHM_SIGMA_RATIO = 2.0 * math.sqrt(2.0 * math.log(2.0))


class FitError(RuntimeError):
    """Line-scan fit failed to converge or the data are degenerate."""


@dataclass(frozen=True)
class ImagingContext:
    objective_na: float = 0.9
    medium_index: float = 2.42
    sil_present: bool = True
    excitation_wavelength_nm: float = 532.0

    def __post_init__(self):
        if not 0.0 < self.objective_na <= 1.0:
            raise ValueError(f"objective NA must be in (0, 1], got {self.objective_na}")
        if self.medium_index < 1.0:
            raise ValueError(f"medium index must be >= 1, got {self.medium_index}")


def effective_na(ctx: ImagingContext) -> float:
    """NA seen by the emitter: objective NA times the index with a SIL."""
    if ctx.sil_present:
        return ctx.objective_na * ctx.medium_index
    return ctx.objective_na


def theoretical_fwhm(wavelength_nm: float, na: float) -> float:
    """Diffraction-limited confocal spot FWHM = 0.37 lambda / NA, in nm."""
    if na <= 0:
        raise ValueError(f"na must be positive, got {na}")
    return 0.37 * wavelength_nm / na


def image_to_real(ctx: ImagingContext, lateral: float, longitudinal: float = 0.0):
    """Convert confocal-scan (image) distances to sample-frame distances.

    The SIL magnifies laterally by n and longitudinally by n^2; identity
    when no SIL is present.
    """
    if not ctx.sil_present:
        return lateral, longitudinal
    n = ctx.medium_index
    return lateral / n, longitudinal / (n * n)


def real_to_image(ctx: ImagingContext, lateral: float, longitudinal: float = 0.0):
    if not ctx.sil_present:
        return lateral, longitudinal
    n = ctx.medium_index
    return lateral * n, longitudinal * (n * n)


@dataclass(frozen=True)
class LineScan:
    """Confocal line scan: image-frame positions (um) and count rates."""

    positions: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        cts = np.asarray(self.counts, dtype=float)
        if pos.ndim != 1 or pos.shape != cts.shape:
            raise ValueError("positions and counts must be 1D arrays of equal length")
        if not np.all(np.diff(pos) > 0):
            raise ValueError("positions must be strictly increasing")
        if np.any(cts < 0):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "counts", cts)


@dataclass(frozen=True)
class GaussianFit:
    amplitude: float
    center: float
    sigma: float
    offset: float
    amplitude_err: float
    center_err: float
    sigma_err: float
    offset_err: float

    @property
    def fwhm(self) -> float:
        return FWHM_SIGMA_RATIO * self.sigma

    @property
    def fwhm_err(self) -> float:
        return FWHM_SIGMA_RATIO * self.sigma_err


def _gaussian(x, amplitude, center, sigma, offset):
    return amplitude * np.exp(-((x - center) ** 2) / (2.0 * sigma**2)) + offset


def fit_gaussian_linescan(scan: LineScan, max_iterations: int = 20000) -> GaussianFit:
    """Least-squares Gaussian + offset fit of a line scan.

    Initial guesses come from data moments (argmax centre, second-moment
    sigma, edge-median offset); parameter uncertainties are the square
    roots of the covariance diagonal scaled by the reduced chi-square.
    """
    x, y = scan.positions, scan.counts
    if x.size < 5:
        raise FitError("need at least 5 points to fit a Gaussian")
    if np.ptp(y) == 0.0:
        raise FitError("counts are constant; nothing to fit")

    edge = max(1, x.size // 10)
    offset0 = float(np.median(np.concatenate([y[:edge], y[-edge:]])))
    weights = np.clip(y - offset0, 0.0, None)
    center0 = float(x[np.argmax(y)])
    wsum = float(weights.sum())
    if wsum > 0:
        mu = float((weights * x).sum() / wsum)
        var = float((weights * (x - mu) ** 2).sum() / wsum)
        sigma0 = math.sqrt(var) if var > 0 else np.ptp(x) / 8.0
    else:
        sigma0 = np.ptp(x) / 8.0
    amp0 = float(y.max() - offset0)

    try:
        popt, pcov = curve_fit(
            _gaussian,
            x,
            y,
            p0=[amp0, center0, sigma0, offset0],
            maxfev=max_iterations,
        )
    except RuntimeError as exc:
        raise FitError(f"Gaussian fit did not converge: {exc}") from exc

    perr = np.sqrt(np.diag(pcov))
    amplitude, center, sigma, offset = popt
    if sigma < 0:  # sign degeneracy: sigma enters squared
        sigma = -sigma
    if sigma <= 0 or not np.isfinite(perr).all():
        raise FitError("degenerate Gaussian fit (sigma <= 0 or singular covariance)")
    return GaussianFit(
        amplitude=float(amplitude),
        center=float(center),
        sigma=float(sigma),
        offset=float(offset),
        amplitude_err=float(perr[0]),
        center_err=float(perr[1]),
        sigma_err=float(perr[2]),
        offset_err=float(perr[3]),
    )


def real_fwhm(ctx: ImagingContext, fit: GaussianFit) -> tuple[float, float]:
    """Magnification-corrected (sample-frame) FWHM and uncertainty."""
    fw, _ = image_to_real(ctx, fit.fwhm)
    err, _ = image_to_real(ctx, fit.fwhm_err)
    return fw, err

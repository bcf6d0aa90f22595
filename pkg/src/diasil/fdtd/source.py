"""Dipole current source with a band-covering Gaussian-modulated pulse."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian-envelope carrier: s(t) = A exp(-(t-t0)^2/(2 tau^2)) cos(w0 (t-t0)).

    tau is in light-travel um (c = 1); the spectral amplitude at angular
    frequency w is ~ exp(-(w - w0)^2 tau^2 / 2) relative to the peak.
    """

    center_wavelength_nm: float = 700.0
    tau_um: float = 2.0
    amplitude: float = 1.0
    t0_factor: float = 5.0

    @property
    def omega0(self) -> float:
        return TWO_PI / (self.center_wavelength_nm * 1e-3)

    @property
    def t0(self) -> float:
        return self.t0_factor * self.tau_um

    @property
    def duration(self) -> float:
        """Time after which the envelope has decayed to the startup level."""
        return 2.0 * self.t0

    def __call__(self, t: float) -> float:
        u = t - self.t0
        return self.amplitude * math.exp(-u * u / (2.0 * self.tau_um**2)) * math.cos(
            self.omega0 * u
        )

    def envelope_ratio(self, wavelength_nm: float) -> float:
        """Spectral amplitude at a wavelength relative to the carrier peak."""
        w = TWO_PI / (wavelength_nm * 1e-3)
        return math.exp(-((w - self.omega0) ** 2) * self.tau_um**2 / 2.0)

    @classmethod
    def for_band(
        cls,
        min_nm: float = 600.0,
        max_nm: float = 800.0,
        edge_ratio: float = 0.01,
        amplitude: float = 1.0,
    ) -> "GaussianPulse":
        """Pulse whose spectrum keeps >= edge_ratio amplitude across a band."""
        center = 2.0 / (1.0 / min_nm + 1.0 / max_nm)  # centre in frequency
        w0 = TWO_PI / (center * 1e-3)
        dw = max(abs(TWO_PI / (min_nm * 1e-3) - w0), abs(TWO_PI / (max_nm * 1e-3) - w0))
        tau = math.sqrt(2.0 * math.log(1.0 / edge_ratio)) / dw
        return cls(center_wavelength_nm=center, tau_um=tau, amplitude=amplitude)


@dataclass(frozen=True)
class DipoleSource:
    """Soft electric current source on Yee edges nearest to `position_um`."""

    position_um: tuple[float, float, float] = (0.0, 0.0, 0.0)
    orientation: tuple[float, float, float] = (1.0, 0.0, 0.0)
    pulse: GaussianPulse = field(default_factory=GaussianPulse.for_band)

    def __post_init__(self):
        n = float(np.linalg.norm(self.orientation))
        if abs(n - 1.0) > 1e-9:
            raise ValueError(f"dipole orientation must be unit norm, |v| = {n}")

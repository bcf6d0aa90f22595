"""Closed-form / quadrature oracle for dipole collection efficiencies.

Independent cross-check for the FDTD pipeline: dipole radiation pattern,
Fresnel power transmission, and cone integrals for the planar interface and
the hemispherical surface.  The planar model is incoherent (no interference
with the interface reflection): at emitter depths of a few microns the
fringes average out across the 600-800 nm band, and the coherent treatment
is deliberately out of scope.

All functions are pure and re-entrant.
"""

from __future__ import annotations

import math

import numpy as np

#: Mean of the three Cartesian orientations, accepted wherever an
#: orientation vector is.
ISOTROPIC = "isotropic"


def fresnel_power_transmission(n1: float, n2: float, theta1: float, pol: str) -> float:
    """Power transmittance through a planar n1 -> n2 interface.

    `pol` is "s" or "p".  Returns 0 beyond the critical angle when n1 > n2.
    """
    if pol not in ("s", "p"):
        raise ValueError(f"pol must be 's' or 'p', got {pol!r}")
    cos1 = math.cos(theta1)
    sin2 = n1 * math.sin(theta1) / n2
    if sin2 >= 1.0:
        return 0.0
    cos2 = math.sqrt(1.0 - sin2 * sin2)
    if pol == "s":
        denom = n1 * cos1 + n2 * cos2
    else:
        denom = n1 * cos2 + n2 * cos1
    return 4.0 * n1 * cos1 * n2 * cos2 / (denom * denom)


def fresnel_power_reflection(n1: float, n2: float, theta1: float, pol: str) -> float:
    """Power reflectance; satisfies T + R = 1 below the critical angle."""
    if pol not in ("s", "p"):
        raise ValueError(f"pol must be 's' or 'p', got {pol!r}")
    cos1 = math.cos(theta1)
    sin2 = n1 * math.sin(theta1) / n2
    if sin2 >= 1.0:
        return 1.0
    cos2 = math.sqrt(1.0 - sin2 * sin2)
    if pol == "s":
        r = (n1 * cos1 - n2 * cos2) / (n1 * cos1 + n2 * cos2)
    else:
        r = (n2 * cos1 - n1 * cos2) / (n2 * cos1 + n1 * cos2)
    return r * r


def dipole_radiation_pattern(orientation, direction) -> float:
    """Normalised power per steradian of an oscillating dipole.

    D(u; p) = (3 / 8 pi) (1 - (p . u)^2); integrates to 1 over the sphere.
    """
    p = np.asarray(orientation, dtype=float)
    u = np.asarray(direction, dtype=float)
    c = float(np.dot(p, u))
    return (3.0 / (8.0 * math.pi)) * (1.0 - c * c)


def _orientations(orientation):
    if isinstance(orientation, str):
        if orientation != ISOTROPIC:
            raise ValueError(f"unknown orientation class {orientation!r}")
        return [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0])]
    p = np.asarray(orientation, dtype=float)
    n = np.linalg.norm(p)
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"orientation must be a unit vector, |v| = {n}")
    return [p]


def _cone_nodes(cos_min: float, n_theta: int, n_phi: int):
    """Gauss-Legendre nodes in cos(theta) on [cos_min, 1] x midpoint phi."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    ct = 0.5 * (cos_min + 1.0) + 0.5 * (1.0 - cos_min) * x
    wt = 0.5 * (1.0 - cos_min) * w
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    wphi = 2.0 * math.pi / n_phi
    return ct, wt, phi, wphi


def planar_collection_efficiency(
    orientation, na: float, n: float = 2.42, samples: int = 256
) -> float:
    """Fraction of dipole power collected through a planar interface.

    Integrates the dipole pattern over internal angles theta1 <= asin(na/n),
    weighting each direction by the s/p-resolved Fresnel power transmission
    (s and p fractions from projecting the dipole far-field polarisation on
    the plane of incidence).
    """
    if na > n:
        raise ValueError(f"na = {na} exceeds the medium index {n}")
    if samples < 64:
        raise ValueError("samples must be >= 64")
    if na <= 0:
        return 0.0

    cos_min = math.sqrt(1.0 - (na / n) ** 2)
    ct, wt, phi, wphi = _cone_nodes(cos_min, samples, samples)
    st = np.sqrt(1.0 - ct * ct)
    theta = np.arccos(ct)

    ts = np.array([fresnel_power_transmission(n, 1.0, t, "s") for t in theta])
    tp = np.array([fresnel_power_transmission(n, 1.0, t, "p") for t in theta])

    cphi, sphi = np.cos(phi), np.sin(phi)
    shape = (samples, samples)

    total = 0.0
    for p in _orientations(orientation):
        # far-field E ~ p - (p.u) u ; s along phi-hat, p-pol along theta-hat
        es = np.broadcast_to(-p[0] * sphi + p[1] * cphi, shape)
        ep = (
            p[0] * ct[:, None] * cphi[None, :]
            + p[1] * ct[:, None] * sphi[None, :]
            - p[2] * st[:, None]
        )
        # |es|^2 + |ep|^2 == 1 - (p.u)^2 so D * (ws Ts + wp Tp) simplifies
        dens = (3.0 / (8.0 * math.pi)) * (es * es * ts[:, None] + ep * ep * tp[:, None])
        total += float(np.sum(dens * wt[:, None]) * wphi)
    return total / len(_orientations(orientation))


def hemisphere_collection_efficiency(
    orientation, na: float, n: float = 2.42, samples: int = 256
) -> float:
    """Collection efficiency through a hemispherical surface, emitter at centre.

    Rays from the centre cross the surface at normal incidence, so direction
    is preserved and only the normal-incidence Fresnel factor applies:
    eta = T_normal(n -> 1) * integral of D over theta <= asin(na).
    """
    if not 0.0 <= na <= 1.0:
        raise ValueError(f"na must be in [0, 1], got {na}")
    if samples < 64:
        raise ValueError("samples must be >= 64")
    if na == 0.0:
        return 0.0

    t_norm = fresnel_power_transmission(n, 1.0, 0.0, "s")
    cos_min = math.sqrt(1.0 - na * na)
    ct, wt, phi, wphi = _cone_nodes(cos_min, samples, samples)
    st = np.sqrt(1.0 - ct * ct)
    cphi, sphi = np.cos(phi), np.sin(phi)
    ux = st[:, None] * cphi[None, :]
    uy = st[:, None] * sphi[None, :]
    uz = ct[:, None] * np.ones_like(cphi)[None, :]

    total = 0.0
    for p in _orientations(orientation):
        pu = p[0] * ux + p[1] * uy + p[2] * uz
        dens = (3.0 / (8.0 * math.pi)) * (1.0 - pu * pu)
        total += float(np.sum(dens * wt[:, None]) * wphi)
    return t_norm * total / len(_orientations(orientation))

"""diasil: photon-collection simulation for emitters under diamond surfaces.

Submodules
----------
scene       geometry and material description of the three surface types
fdtd        3D Yee-grid solver with CPML boundaries and spectral monitors
farfield    angular spectra, NA-limited collection efficiencies, sweeps
analytic    closed-form / quadrature collection-efficiency oracle
confocal    effective NA, resolution, magnification, line-scan fitting
photonstats g2 background correction, saturation fits, spectral fractions
cli         command-line entry point (`diasil ...`)
"""

__version__ = "0.1.0"

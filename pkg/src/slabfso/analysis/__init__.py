"""Sweeps, Monte Carlo state sampling, sensitivity and link margin."""

from .budget import link_margin
from .montecarlo import MonteCarloStats, Realization, monte_carlo, sample_realization
from .sensitivity import SensitivityReport, boundary_sensitivity, probability_sensitivity
from .sweep import (
    Axis,
    SweepRow,
    SweepTable,
    linear_grid,
    rescale_profile,
    sweep_wavelength,
    sweep_zenith,
)

__all__ = [
    "Axis",
    "MonteCarloStats",
    "Realization",
    "SensitivityReport",
    "SweepRow",
    "SweepTable",
    "boundary_sensitivity",
    "link_margin",
    "linear_grid",
    "monte_carlo",
    "probability_sensitivity",
    "rescale_profile",
    "sample_realization",
    "sweep_wavelength",
    "sweep_zenith",
]

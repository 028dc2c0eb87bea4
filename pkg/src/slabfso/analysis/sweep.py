"""Transmittance sweeps over zenith angle or wavelength."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from ..atmosphere import (
    MAX_ZENITH_DEG,
    AtmosphereProfile,
    ExtinctionCoefficient,
    LayerState,
    Slab,
    effective_transmittance,
)
from ..errors import ConfigurationError, DomainError, GeometryError
from ..extinction import REFERENCE_WAVELENGTH_NM, check_wavelength, scale_to_wavelength


class Axis(str, Enum):
    ZENITH_DEG = "zenith_deg"
    WAVELENGTH_NM = "wavelength_nm"


class SweepRow(NamedTuple):
    value: float
    transmittance: float
    loss_db: float


@dataclass(frozen=True)
class SweepTable:
    axis: Axis
    rows: tuple[SweepRow, ...]

    @property
    def values(self) -> list[float]:
        return [r.value for r in self.rows]

    @property
    def transmittances(self) -> list[float]:
        return [r.transmittance for r in self.rows]

    @property
    def losses_db(self) -> list[float]:
        return [r.loss_db for r in self.rows]


def _check_increasing(grid: Sequence[float], what: str) -> list[float]:
    out = [float(g) for g in grid]
    if not out:
        raise DomainError(f"{what} grid is empty")
    if any(not math.isfinite(g) for g in out):
        raise DomainError(f"{what} grid has non-finite values")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise DomainError(f"{what} grid must be strictly increasing")
    return out


def sweep_zenith(profile: AtmosphereProfile, zenith_grid: Sequence[float]) -> SweepTable:
    grid = _check_increasing(zenith_grid, "zenith")
    if grid[0] < 0.0 or grid[-1] > MAX_ZENITH_DEG:
        raise GeometryError(f"zenith grid must lie in [0, {MAX_ZENITH_DEG:g}] deg")
    rows = []
    for z in grid:
        r = effective_transmittance(profile, z)
        rows.append(SweepRow(z, r.transmittance, r.loss_db))
    return SweepTable(Axis.ZENITH_DEG, tuple(rows))


def rescale_profile(
    profile: AtmosphereProfile, wavelength_nm: float, *, strict: bool = True
) -> AtmosphereProfile:
    """Copy of ``profile`` with every coefficient moved to ``wavelength_nm``.

    Scaling needs each state's visibility. With ``strict=True`` a state
    without one raises :class:`ConfigurationError`; with ``strict=False`` it
    keeps its reference-wavelength coefficient.
    """
    lam = check_wavelength(wavelength_nm)
    missing = states_without_visibility(profile)
    if strict and missing:
        names = ", ".join(f"slab {j} state {lbl!r}" for j, lbl in missing)
        raise ConfigurationError(f"wavelength scaling needs visibility_km on: {names}")
    if lam == REFERENCE_WAVELENGTH_NM:
        return profile
    slabs = []
    for slab in profile.slabs:
        states = []
        for s in slab.states:
            if s.visibility_km is not None:
                att = s.attenuation
                scaled = scale_to_wavelength(att.value, s.visibility_km, lam)
                s = LayerState(
                    s.label, ExtinctionCoefficient(scaled, att.unit), s.probability, s.visibility_km
                )
            states.append(s)
        slabs.append(Slab(slab.base_km, slab.top_km, states))
    return profile.with_slabs(slabs)


def states_without_visibility(profile: AtmosphereProfile) -> list[tuple[int, str]]:
    return [(j, s.label) for j, s in profile.states() if s.visibility_km is None]


def sweep_wavelength(
    profile: AtmosphereProfile,
    lambda_grid: Sequence[float],
    zenith_deg: float = 0.0,
    *,
    strict: bool = True,
) -> SweepTable:
    """Effective transmittance at each wavelength, Kim-scaled from 1550 nm."""
    grid = _check_increasing(lambda_grid, "wavelength")
    for lam in grid:
        check_wavelength(lam)
    rows = []
    for lam in grid:
        r = effective_transmittance(rescale_profile(profile, lam, strict=strict), zenith_deg)
        rows.append(SweepRow(lam, r.transmittance, r.loss_db))
    return SweepTable(Axis.WAVELENGTH_NM, tuple(rows))


def linear_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid ``start, start+step, ..., <= stop``."""
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise DomainError("grid bounds must be finite")
    if step <= 0.0:
        raise DomainError("grid step must be positive")
    if stop < start:
        raise DomainError("grid stop must not be below start")
    n = int(math.floor((stop - start) / step + 1e-9))
    grid = [start + i * step for i in range(n + 1)]
    if abs(grid[-1] - stop) <= 1e-9 * max(1.0, abs(stop)):
        grid[-1] = stop
    return grid

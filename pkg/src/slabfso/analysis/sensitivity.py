"""Robustness of path loss to layer-boundary and occurrence-probability changes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..atmosphere import (
    AtmosphereProfile,
    LayerState,
    LinkGeometry,
    Slab,
    clip_profile,
    effective_transmittance,
    require_valid,
)
from ..errors import DomainError

__all__ = [
    "SensitivityReport",
    "interior_boundaries",
    "shift_boundary",
    "perturb_probability",
    "boundary_sensitivity",
    "probability_sensitivity",
]

# extents below this are treated as a slab that vanished exactly
_ZERO_KM = 1e-12


@dataclass(frozen=True)
class SensitivityReport:
    perturbation: str
    baseline_loss_db: float
    perturbed_loss_db: float
    delta_db: float
    feasible: bool = True
    note: str = ""

    @classmethod
    def infeasible(cls, perturbation: str, baseline: float, note: str) -> SensitivityReport:
        return cls(perturbation, baseline, math.nan, math.nan, False, note)


def _path_loss(profile: AtmosphereProfile, geometry: LinkGeometry, zenith_deg: float) -> float:
    return effective_transmittance(clip_profile(profile, geometry), zenith_deg).loss_db


def _resolve_zenith(geometry: LinkGeometry, zenith_deg: float | None) -> float:
    return geometry.zenith_deg if zenith_deg is None else float(zenith_deg)


def interior_boundaries(profile: AtmosphereProfile, geometry: LinkGeometry) -> list[int]:
    """Indices ``i`` where slab ``i`` meets slab ``i+1`` strictly inside the path."""
    hi = math.inf if geometry.platform_km is None else geometry.platform_km
    out = []
    for i in range(len(profile.slabs) - 1):
        b = profile.slabs[i].top_km
        if b == profile.slabs[i + 1].base_km and geometry.ground_km < b < hi:
            out.append(i)
    return out


def shift_boundary(profile: AtmosphereProfile, index: int, delta_km: float) -> AtmosphereProfile:
    """Move the boundary between slabs ``index`` and ``index+1`` by ``delta_km``.

    A neighbour whose extent drops to exactly zero is removed; a negative
    extent raises :class:`DomainError`.
    """
    lower, upper = profile.slabs[index], profile.slabs[index + 1]
    b = lower.top_km + delta_km
    lower_ext = b - lower.base_km
    upper_ext = upper.top_km - b
    if lower_ext < -_ZERO_KM or upper_ext < -_ZERO_KM:
        raise DomainError(
            f"shifting boundary {lower.top_km:g} km by {delta_km:+g} km collapses a slab"
        )
    repl = []
    if lower_ext > _ZERO_KM:
        repl.append(lower.with_bounds(lower.base_km, b))
    if upper_ext > _ZERO_KM:
        repl.append(upper.with_bounds(b, upper.top_km))
    slabs = list(profile.slabs)
    slabs[index : index + 2] = repl
    return profile.with_slabs(slabs)


def boundary_sensitivity(
    profile: AtmosphereProfile,
    geometry: LinkGeometry,
    delta_km: float,
    zenith_deg: float | None = None,
) -> list[SensitivityReport]:
    """Shift every interior boundary by ``+delta_km`` and ``-delta_km``.

    Boundaries are moved on the full profile and the result is clipped to the
    link, so a layer pushed beyond the platform simply leaves the path.
    """
    z = _resolve_zenith(geometry, zenith_deg)
    d = abs(float(delta_km))
    if not (math.isfinite(d) and d > 0.0):
        raise DomainError("delta_km must be non-zero and finite")
    require_valid(profile)
    baseline = _path_loss(profile, geometry, z)
    reports = []
    for i in interior_boundaries(profile, geometry):
        b = profile.slabs[i].top_km
        for step in (d, -d):
            label = f"boundary {b:g} km {step:+g} km"
            try:
                shifted = shift_boundary(profile, i, step)
            except DomainError as exc:
                reports.append(SensitivityReport.infeasible(label, baseline, str(exc)))
                continue
            loss = _path_loss(shifted, geometry, z)
            reports.append(SensitivityReport(label, baseline, loss, loss - baseline))
    return reports


def perturb_probability(slab: Slab, k: int, factor: float) -> Slab:
    """Scale ``eta_k`` by ``factor`` (clamped to [0, 1]); rescale the rest to keep the sum."""
    old = slab.states[k].probability
    new = min(1.0, max(0.0, old * factor))
    rest = 1.0 - old
    if rest <= 0.0 and new < old:
        raise DomainError("complementary states carry no probability to rescale")
    scale = (1.0 - new) / rest if rest > 0.0 else 0.0
    states = []
    for i, s in enumerate(slab.states):
        p = new if i == k else s.probability * scale
        states.append(LayerState(s.label, s.attenuation, min(1.0, max(0.0, p)), s.visibility_km))
    return Slab(slab.base_km, slab.top_km, states)


def probability_sensitivity(
    profile: AtmosphereProfile,
    geometry: LinkGeometry,
    fraction: float,
    zenith_deg: float | None = None,
) -> list[SensitivityReport]:
    """Scale each ``eta`` of each on-path multi-state slab by ``1 +/- fraction``.

    Single-state slabs cannot be perturbed under normalization and come back
    as infeasible reports carrying a note.
    """
    z = _resolve_zenith(geometry, zenith_deg)
    f = float(fraction)
    if not (0.0 < f < 1.0):
        raise DomainError(f"fraction must be in (0, 1), got {f}")
    require_valid(profile)
    baseline = _path_loss(profile, geometry, z)
    clipped = clip_profile(profile, geometry)
    lo, hi = clipped.slabs[0].base_km, clipped.slabs[-1].top_km
    reports = []
    for j, slab in enumerate(profile.slabs):
        if slab.top_km <= lo or slab.base_km >= hi:
            continue
        if len(slab.states) < 2:
            reports.append(
                SensitivityReport.infeasible(
                    f"eta slab {j}", baseline, "single-state slab skipped"
                )
            )
            continue
        for k, state in enumerate(slab.states):
            for sign in (1.0, -1.0):
                label = f"eta slab {j} {state.label} {sign * f:+.0%}"
                try:
                    new_slab = perturb_probability(slab, k, 1.0 + sign * f)
                except DomainError as exc:
                    reports.append(SensitivityReport.infeasible(label, baseline, str(exc)))
                    continue
                slabs = list(profile.slabs)
                slabs[j] = new_slab
                loss = _path_loss(profile.with_slabs(slabs), geometry, z)
                reports.append(SensitivityReport(label, baseline, loss, loss - baseline))
    return reports

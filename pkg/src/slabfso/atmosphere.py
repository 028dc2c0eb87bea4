"""Layered atmosphere model and slab-wise Beer-Lambert transmittance.

The atmosphere is a stack of horizontally uniform slabs. Each slab holds a
small set of mutually exclusive weather states, each with an extinction
coefficient and a long-term occurrence probability. Along a slant path at
zenith angle ``zeta`` the slab's slant length is ``sec(zeta) * delta_l``.

Two evaluation modes exist because tabulated coefficients are in dB/km:

* ``Mode.PAPER`` feeds the numeric coefficient straight into ``exp``. This is
  how the published scenario figures were computed.
* ``Mode.PHYSICAL`` converts dB/km to natural units (factor ``ln(10)/10``)
  before exponentiating, so ``loss_db`` equals the dB/km path integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from .errors import DomainError, EmptyPathError, GeometryError, ValidationError

__all__ = [
    "Unit",
    "Mode",
    "ExtinctionCoefficient",
    "LayerState",
    "Slab",
    "AtmosphereProfile",
    "LinkGeometry",
    "TransmittanceResult",
    "Violation",
    "DB_TO_NATURAL",
    "MAX_ZENITH_DEG",
    "NORMALIZATION_TOL",
    "db_per_km_to_natural",
    "natural_to_db_per_km",
    "secant",
    "slab_transmittance",
    "path_transmittance",
    "effective_transmittance",
    "total_loss_db",
    "link_transmittance",
    "clip_profile",
    "validate_profile",
    "require_valid",
    "split_slab",
    "subdivide",
]

#: Multiply a dB/km coefficient by this to get natural (Np-like) 1/km.
DB_TO_NATURAL = math.log(10.0) / 10.0
MAX_ZENITH_DEG = 85.0
NORMALIZATION_TOL = 1e-6


class Unit(str, Enum):
    DB_PER_KM = "db_per_km"
    PER_KM = "per_km"


class Mode(str, Enum):
    PAPER = "paper"
    PHYSICAL = "physical"


def _check_extinction(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"extinction must be finite and non-negative, got {x!r}")
    return x


def db_per_km_to_natural(x: float) -> float:
    """Convert an extinction coefficient from dB/km to natural 1/km."""
    return _check_extinction(x) * DB_TO_NATURAL


def natural_to_db_per_km(x: float) -> float:
    """Inverse of :func:`db_per_km_to_natural`."""
    return _check_extinction(x) / DB_TO_NATURAL


@dataclass(frozen=True)
class ExtinctionCoefficient:
    """Per-kilometre extinction with an explicit unit tag."""

    value: float
    unit: Unit = Unit.DB_PER_KM

    def __post_init__(self):
        object.__setattr__(self, "value", _check_extinction(self.value))
        object.__setattr__(self, "unit", Unit(self.unit))

    def to_natural(self) -> float:
        if self.unit is Unit.PER_KM:
            return self.value
        return db_per_km_to_natural(self.value)

    def to_db(self) -> float:
        if self.unit is Unit.DB_PER_KM:
            return self.value
        return natural_to_db_per_km(self.value)

    def in_mode(self, mode: Mode) -> float:
        """Number that goes into the exponent under ``mode``."""
        if Mode(mode) is Mode.PAPER:
            return self.value
        return self.to_natural()

    def scaled(self, factor: float) -> ExtinctionCoefficient:
        return ExtinctionCoefficient(self.value * factor, self.unit)


@dataclass(frozen=True)
class LayerState:
    """One mutually exclusive weather state of a slab."""

    label: str
    attenuation: ExtinctionCoefficient
    probability: float
    visibility_km: float | None = None

    def __post_init__(self):
        if not isinstance(self.attenuation, ExtinctionCoefficient):
            object.__setattr__(
                self, "attenuation", ExtinctionCoefficient(self.attenuation)
            )
        p = float(self.probability)
        if not (0.0 <= p <= 1.0):
            raise DomainError(f"state {self.label!r}: probability {p} not in [0, 1]")
        object.__setattr__(self, "probability", p)
        if self.visibility_km is not None:
            v = float(self.visibility_km)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"state {self.label!r}: visibility must be > 0")
            object.__setattr__(self, "visibility_km", v)

    @classmethod
    def db(
        cls,
        label: str,
        att_db_per_km: float,
        probability: float = 1.0,
        visibility_km: float | None = None,
    ) -> LayerState:
        """Shorthand for a state whose coefficient is given in dB/km."""
        return cls(label, ExtinctionCoefficient(att_db_per_km), probability, visibility_km)


@dataclass(frozen=True)
class Slab:
    """Horizontal layer ``[base_km, top_km]`` with its state set.

    Construction does not enforce the slab invariants so that
    :func:`validate_profile` can report them; evaluation functions do.
    """

    base_km: float
    top_km: float
    states: tuple[LayerState, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "base_km", float(self.base_km))
        object.__setattr__(self, "top_km", float(self.top_km))
        object.__setattr__(self, "states", tuple(self.states))

    @property
    def delta_km(self) -> float:
        return self.top_km - self.base_km

    @property
    def probability_total(self) -> float:
        return math.fsum(s.probability for s in self.states)

    def weighted_term(self, mode: Mode) -> float:
        """Sum over states of ``eta * omega * delta_l`` (no secant)."""
        dl = self.delta_km
        total = 0.0
        for s in self.states:
            total += s.probability * s.attenuation.in_mode(mode) * dl
        return total

    def with_bounds(self, base_km: float, top_km: float) -> Slab:
        return Slab(base_km, top_km, self.states)

    def split(self, at_km: float) -> tuple[Slab, Slab]:
        if not (self.base_km < at_km < self.top_km):
            raise DomainError(f"split altitude {at_km} outside ({self.base_km}, {self.top_km})")
        return self.with_bounds(self.base_km, at_km), self.with_bounds(at_km, self.top_km)


@dataclass(frozen=True)
class AtmosphereProfile:
    """Ordered slab stack plus the evaluation mode."""

    name: str
    slabs: tuple[Slab, ...]
    mode: Mode = Mode.PHYSICAL

    def __post_init__(self):
        object.__setattr__(self, "slabs", tuple(self.slabs))
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def top_km(self) -> float:
        return max(s.top_km for s in self.slabs)

    def with_mode(self, mode: Mode | str) -> AtmosphereProfile:
        return replace(self, mode=Mode(mode))

    def with_slabs(self, slabs: Iterable[Slab]) -> AtmosphereProfile:
        return replace(self, slabs=tuple(slabs))

    def states(self) -> Iterable[tuple[int, LayerState]]:
        for j, slab in enumerate(self.slabs):
            for s in slab.states:
                yield j, s


@dataclass(frozen=True)
class LinkGeometry:
    """Link endpoints and pointing. ``platform_km=None`` means above the atmosphere."""

    zenith_deg: float = 0.0
    ground_km: float = 0.0
    platform_km: float | None = None

    def __post_init__(self):
        secant(self.zenith_deg)
        if not (math.isfinite(self.ground_km) and self.ground_km >= 0.0):
            raise GeometryError(f"ground altitude must be >= 0, got {self.ground_km}")
        if self.platform_km is not None and math.isinf(self.platform_km):
            object.__setattr__(self, "platform_km", None)
        if self.platform_km is not None and not self.platform_km > self.ground_km:
            raise GeometryError(
                f"platform altitude {self.platform_km} km must exceed ground {self.ground_km} km"
            )

    @property
    def above_atmosphere(self) -> bool:
        return self.platform_km is None


@dataclass(frozen=True)
class TransmittanceResult:
    transmittance: float
    loss_db: float
    exponent: float

    @classmethod
    def from_exponent(cls, exponent: float) -> TransmittanceResult:
        return cls(math.exp(-exponent), exponent / DB_TO_NATURAL, exponent)


@dataclass(frozen=True)
class Violation:
    rule: str
    slabs: tuple[int, ...]
    message: str

    def __str__(self):
        where = ",".join(str(i) for i in self.slabs)
        return f"[{self.rule}] slab {where}: {self.message}" if where else f"[{self.rule}] {self.message}"


def secant(zenith_deg: float) -> float:
    """``sec(zenith)`` for the flat-slab geometry, restricted to [0, 85] degrees."""
    z = float(zenith_deg)
    if not (0.0 <= z <= MAX_ZENITH_DEG):
        raise GeometryError(f"zenith angle {z} deg outside [0, {MAX_ZENITH_DEG:g}]")
    if z == 0.0:
        return 1.0
    return 1.0 / math.cos(math.radians(z))


def validate_profile(
    profile: AtmosphereProfile, *, normalization: bool = True
) -> list[Violation]:
    """Report every violated slab or profile invariant; empty list means valid.

    ``normalization=False`` skips the per-slab probability-sum check, which is
    what the single-state cascaded form needs.
    """
    out: list[Violation] = []
    if not profile.slabs:
        out.append(Violation("empty-profile", (), "profile has no slabs"))
        return out
    for j, slab in enumerate(profile.slabs):
        if not (math.isfinite(slab.base_km) and math.isfinite(slab.top_km)):
            out.append(Violation("non-finite-bounds", (j,), "slab bounds must be finite"))
            continue
        if slab.base_km < 0.0:
            out.append(Violation("negative-base", (j,), f"base {slab.base_km} km < 0"))
        if not slab.top_km > slab.base_km:
            out.append(
                Violation(
                    "non-positive-extent",
                    (j,),
                    f"top {slab.top_km} km must exceed base {slab.base_km} km",
                )
            )
        if not slab.states:
            out.append(Violation("empty-slab", (j,), "slab needs at least one state"))
            continue
        labels = [s.label for s in slab.states]
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        if dupes:
            out.append(Violation("duplicate-label", (j,), f"repeated state labels {dupes}"))
        if normalization:
            total = slab.probability_total
            if abs(total - 1.0) > NORMALIZATION_TOL:
                out.append(
                    Violation("normalization", (j,), f"state probabilities sum to {total:.10g}, expected 1")
                )
    for j in range(len(profile.slabs) - 1):
        a, b = profile.slabs[j], profile.slabs[j + 1]
        if b.base_km < a.base_km:
            out.append(Violation("unsorted", (j, j + 1), "slabs must be sorted by base altitude"))
        elif a.top_km > b.base_km:
            out.append(
                Violation(
                    "overlap",
                    (j, j + 1),
                    f"[{a.base_km:g}, {a.top_km:g}] overlaps [{b.base_km:g}, {b.top_km:g}]",
                )
            )
    return out


def require_valid(profile: AtmosphereProfile, *, normalization: bool = True) -> None:
    violations = validate_profile(profile, normalization=normalization)
    if violations:
        raise ValidationError(violations)


def slab_transmittance(
    state: LayerState,
    delta_l_km: float,
    zenith_deg: float,
    mode: Mode = Mode.PHYSICAL,
) -> float:
    """Transmittance of one slab in a single, certainly-present state.

    The state's occurrence probability is deliberately ignored here.
    """
    sec = secant(zenith_deg)
    dl = float(delta_l_km)
    if not (math.isfinite(dl) and dl > 0.0):
        raise DomainError(f"slab extent must be > 0, got {dl}")
    return math.exp(-(sec * (state.attenuation.in_mode(mode) * dl)))


def path_transmittance(profile: AtmosphereProfile, zenith_deg: float) -> TransmittanceResult:
    """Cascaded transmittance with one state per slab and ``eta`` in the exponent."""
    sec = secant(zenith_deg)
    require_valid(profile, normalization=False)
    multi = [j for j, s in enumerate(profile.slabs) if len(s.states) != 1]
    if multi:
        raise ValidationError(
            [
                Violation(
                    "multi-state-slab",
                    tuple(multi),
                    "slab has more than one state; use effective_transmittance",
                )
            ]
        )
    total = 0.0
    for slab in profile.slabs:
        total += slab.weighted_term(profile.mode)
    return TransmittanceResult.from_exponent(sec * total)


def effective_transmittance(profile: AtmosphereProfile, zenith_deg: float) -> TransmittanceResult:
    """Probability-weighted transmittance over all slabs and states.

    Returns ``exp(-sec(zeta) * sum_j sum_k eta_jk * omega_jk * dL_j)``. Because
    ``eta`` sits inside the exponent this is the geometric-mean transmittance
    ``exp(E[ln h])`` over state realizations, not ``E[h]``.
    """
    sec = secant(zenith_deg)
    require_valid(profile)
    total = 0.0
    for slab in profile.slabs:
        total += slab.weighted_term(profile.mode)
    return TransmittanceResult.from_exponent(sec * total)


def total_loss_db(profile: AtmosphereProfile, zenith_deg: float) -> float:
    return effective_transmittance(profile, zenith_deg).loss_db


def clip_profile(profile: AtmosphereProfile, geometry: LinkGeometry) -> AtmosphereProfile:
    """Intersect every slab with ``[ground_km, platform_km]``.

    Slabs outside the interval are dropped, boundary slabs are truncated and
    keep their state probabilities unchanged.
    """
    lo = geometry.ground_km
    hi = math.inf if geometry.platform_km is None else geometry.platform_km
    if not hi > lo:
        raise GeometryError("platform must be above ground")
    kept: list[Slab] = []
    for slab in profile.slabs:
        base = max(slab.base_km, lo)
        top = min(slab.top_km, hi)
        if top <= base:
            continue
        if base == slab.base_km and top == slab.top_km:
            kept.append(slab)
        else:
            kept.append(slab.with_bounds(base, top))
    if not kept:
        raise EmptyPathError(
            f"no slab of {profile.name!r} intersects [{lo:g}, {hi:g}] km"
        )
    return profile.with_slabs(kept)


def link_transmittance(profile: AtmosphereProfile, geometry: LinkGeometry) -> TransmittanceResult:
    """Clip to the link endpoints, then evaluate at the geometry's zenith angle."""
    return effective_transmittance(clip_profile(profile, geometry), geometry.zenith_deg)


def split_slab(profile: AtmosphereProfile, index: int, at_km: float) -> AtmosphereProfile:
    """Replace slab ``index`` by two slabs meeting at ``at_km`` (same states)."""
    slabs: list[Slab] = list(profile.slabs)
    lower, upper = slabs[index].split(at_km)
    slabs[index : index + 1] = [lower, upper]
    return profile.with_slabs(slabs)


def subdivide(profile: AtmosphereProfile, at: Sequence[float] | None = None) -> AtmosphereProfile:
    """Split every slab at its midpoint, or at the given interior altitudes."""
    out: list[Slab] = []
    for slab in profile.slabs:
        cuts = [0.5 * (slab.base_km + slab.top_km)] if at is None else sorted(
            a for a in at if slab.base_km < a < slab.top_km
        )
        edges = [slab.base_km, *cuts, slab.top_km]
        out.extend(slab.with_bounds(a, b) for a, b in zip(edges[:-1], edges[1:]))
    return profile.with_slabs(out)

"""Piecewise, probability-weighted Beer-Lambert attenuation for slant FSO links."""

from .atmosphere import (
    AtmosphereProfile,
    ExtinctionCoefficient,
    LayerState,
    LinkGeometry,
    Mode,
    Slab,
    TransmittanceResult,
    Unit,
    clip_profile,
    db_per_km_to_natural,
    effective_transmittance,
    link_transmittance,
    natural_to_db_per_km,
    path_transmittance,
    slab_transmittance,
    total_loss_db,
    validate_profile,
)
from .errors import (
    ConfigurationError,
    DomainError,
    EmptyPathError,
    GeometryError,
    ScenarioSyntaxError,
    SlabFSOError,
    UnknownConditionError,
    ValidationError,
)
from .extinction import kim_extinction, kim_q, lookup_coefficient, scale_to_wavelength
from .scenarios import ScenarioSpec, builtin_scenario, parse_scenario_file, serialize_scenario

__version__ = "0.1.0"

"""Exception types raised by the attenuation engine."""

from __future__ import annotations


class SlabFSOError(ValueError):
    """Base class for all domain, geometry and validation failures."""


class DomainError(SlabFSOError):
    """A numeric argument is outside the domain of the operation."""


class GeometryError(SlabFSOError):
    """Invalid zenith angle or link endpoints."""


class EmptyPathError(GeometryError):
    """Clipping removed every slab from the path."""


class ConfigurationError(SlabFSOError):
    """Profile lacks data a requested computation needs (e.g. visibility)."""


class UnknownConditionError(SlabFSOError, LookupError):
    """Label not found in the coefficient database."""


class ValidationError(SlabFSOError):
    """Profile violates one or more structural invariants.

    Attributes
    ----------
    violations : list of Violation
        Every rule that failed, in slab order.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(str(v) for v in self.violations) or "invalid profile"
        super().__init__(msg)


class ScenarioSyntaxError(SlabFSOError):
    """Malformed scenario document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)

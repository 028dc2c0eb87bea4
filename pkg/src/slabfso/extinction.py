"""Reference extinction coefficients at 1550 nm and Kim wavelength scaling.

The coefficient table is embedded as CSV text so the shipped numbers can be
compared character-for-character with the source table. Kim's visibility
model is used only for the *relative* wavelength dependence; absolute values
always come from the table.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .atmosphere import ExtinctionCoefficient, Unit
from .errors import DomainError, UnknownConditionError

__all__ = [
    "Category",
    "VisibilityClass",
    "CoefficientRecord",
    "DATABASE_VERSION",
    "REFERENCE_WAVELENGTH_NM",
    "WAVELENGTH_RANGE_NM",
    "records",
    "lookup_coefficient",
    "export_csv",
    "check_wavelength",
    "kim_q",
    "kim_extinction",
    "scale_to_wavelength",
]

DATABASE_VERSION = "1"
REFERENCE_WAVELENGTH_NM = 1550.0
WAVELENGTH_RANGE_NM = (500.0, 1600.0)
KOSCHMIEDER = 3.91
KIM_REFERENCE_NM = 550.0


class Category(str, Enum):
    FOG = "fog"
    CLOUD = "cloud"
    POLLUTION = "pollution"
    SNOW = "snow"


class VisibilityClass(str, Enum):
    LOW = "low"
    MODERATE = "moderate"
    HIGH = "high"


# condition, category, visibility_km, att_db_per_km_1550, visibility_class
_TABLE = """\
Dense fog,fog,0.05,7.0721,low
Thick fog,fog,0.20,1.7680,low
Moderate fog,fog,0.50,0.7072,low
Light fog,fog,0.77,0.4592,low
Thin fog,fog,1.90,0.1860,moderate
Cumulus,cloud,0.0280,12.6287,low
Stratus,cloud,0.0626,5.6486,low
Stratocumulus,cloud,0.0959,3.6872,low
Altostratus,cloud,0.0369,9.5827,low
Nimbostratus,cloud,0.0429,8.2425,low
Cirrus,cloud,64.66,0.00305,moderate
Thin Cirrus,cloud,290.69,0.00193,high
Extremely polluted atm.,pollution,1,0.3536,low
Normal atm.,pollution,10,0.0340,moderate
Non-polluted atm. (clear),pollution,145,0.0025,high
Heavy snow,snow,0.1,0.2,low
Moderate snow,snow,0.5,0.08,low
Light snow,snow,1,0.03,moderate
"""


@dataclass(frozen=True)
class CoefficientRecord:
    condition: str
    category: Category
    visibility_km: float
    attenuation_db_per_km: float
    visibility_class: VisibilityClass
    # verbatim table text, used for export and exact comparisons
    visibility_text: str = ""
    attenuation_text: str = ""

    @property
    def coefficient(self) -> ExtinctionCoefficient:
        return ExtinctionCoefficient(self.attenuation_db_per_km, Unit.DB_PER_KM)


@lru_cache(maxsize=1)
def records() -> tuple[CoefficientRecord, ...]:
    """All table rows in source order."""
    rows = []
    for cond, cat, vis, att, vclass in csv.reader(io.StringIO(_TABLE)):
        rows.append(
            CoefficientRecord(
                condition=cond,
                category=Category(cat),
                visibility_km=float(vis),
                attenuation_db_per_km=float(att),
                visibility_class=VisibilityClass(vclass),
                visibility_text=vis,
                attenuation_text=att,
            )
        )
    return tuple(rows)


def _key(label: str) -> str:
    return " ".join(label.split()).casefold()


def lookup_coefficient(condition: str) -> CoefficientRecord:
    """Find a row by condition label (case-insensitive, whitespace-trimmed)."""
    want = _key(condition)
    for rec in records():
        if _key(rec.condition) == want:
            return rec
    valid = ", ".join(r.condition for r in records())
    raise UnknownConditionError(f"unknown condition {condition!r}; valid labels: {valid}")


def export_csv() -> str:
    """Coefficient table as CSV with a fixed header."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["condition", "category", "visibility_km", "att_db_per_km_1550"])
    for r in records():
        w.writerow([r.condition, r.category.value, r.visibility_text, r.attenuation_text])
    return buf.getvalue()


def check_wavelength(nm: float) -> float:
    nm = float(nm)
    lo, hi = WAVELENGTH_RANGE_NM
    if not (lo <= nm <= hi):
        raise DomainError(f"wavelength {nm} nm outside [{lo:g}, {hi:g}] nm")
    return nm


def _check_visibility(v: float) -> float:
    v = float(v)
    if not (math.isfinite(v) and v > 0.0):
        raise DomainError(f"visibility must be positive, got {v!r}")
    return v


def kim_q(visibility_km: float) -> float:
    """Kim size-distribution exponent ``q(V)`` (V in km)."""
    v = _check_visibility(visibility_km)
    if v > 50.0:
        return 1.6
    if v > 6.0:
        return 1.3
    if v >= 1.0:
        return 0.16 * v + 0.34
    if v >= 0.5:
        return v - 0.5
    return 0.0


def kim_extinction(visibility_km: float, wavelength_nm: float) -> ExtinctionCoefficient:
    """Kim absolute extinction ``3.91/V * (lambda/550)^-q`` in natural 1/km."""
    v = _check_visibility(visibility_km)
    lam = check_wavelength(wavelength_nm)
    beta = KOSCHMIEDER / v * (lam / KIM_REFERENCE_NM) ** (-kim_q(v))
    return ExtinctionCoefficient(beta, Unit.PER_KM)


def scale_to_wavelength(
    att_at_1550: float, visibility_km: float, wavelength_nm: float
) -> float:
    """Move a 1550 nm coefficient to another wavelength with the Kim ratio.

    Unit-agnostic: the result is in whatever unit ``att_at_1550`` was given.
    """
    att = float(att_at_1550)
    if not (math.isfinite(att) and att >= 0.0):
        raise DomainError(f"attenuation must be finite and non-negative, got {att!r}")
    q = kim_q(visibility_km)
    lam = check_wavelength(wavelength_nm)
    if lam == REFERENCE_WAVELENGTH_NM:
        return att
    return att * (lam / REFERENCE_WAVELENGTH_NM) ** (-q)

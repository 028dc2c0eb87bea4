import csv
import io

import pytest

from slabfso.atmosphere import Unit
from slabfso.errors import DomainError, UnknownConditionError
from slabfso.extinction import (
    Category,
    export_csv,
    kim_extinction,
    kim_q,
    lookup_coefficient,
    records,
    scale_to_wavelength,
)

import oracles

# Reference coefficients, typed independently of the embedded data.
TABLE_I = [
    ("Dense fog", "fog", "0.05", "7.0721"),
    ("Thick fog", "fog", "0.20", "1.7680"),
    ("Moderate fog", "fog", "0.50", "0.7072"),
    ("Light fog", "fog", "0.77", "0.4592"),
    ("Thin fog", "fog", "1.90", "0.1860"),
    ("Cumulus", "cloud", "0.0280", "12.6287"),
    ("Stratus", "cloud", "0.0626", "5.6486"),
    ("Stratocumulus", "cloud", "0.0959", "3.6872"),
    ("Altostratus", "cloud", "0.0369", "9.5827"),
    ("Nimbostratus", "cloud", "0.0429", "8.2425"),
    ("Cirrus", "cloud", "64.66", "0.00305"),
    ("Thin Cirrus", "cloud", "290.69", "0.00193"),
    ("Extremely polluted atm.", "pollution", "1", "0.3536"),
    ("Normal atm.", "pollution", "10", "0.0340"),
    ("Non-polluted atm. (clear)", "pollution", "145", "0.0025"),
    ("Heavy snow", "snow", "0.1", "0.2"),
    ("Moderate snow", "snow", "0.5", "0.08"),
    ("Light snow", "snow", "1", "0.03"),
]


@pytest.mark.parametrize(
    "label, vis, att",
    [("Dense fog", 0.05, 7.0721), ("Cumulus", 0.0280, 12.6287), ("Heavy snow", 0.1, 0.2)],
)
def test_lookup(label, vis, att):
    rec = lookup_coefficient(label)
    assert rec.visibility_km == vis
    assert rec.attenuation_db_per_km == att
    assert rec.coefficient.unit is Unit.DB_PER_KM


def test_lookup_normalizes_label():
    assert lookup_coefficient("  dense   FOG ").condition == "Dense fog"


def test_lookup_unknown_lists_labels():
    with pytest.raises(UnknownConditionError, match="Nimbostratus"):
        lookup_coefficient("drizzle")


def test_database_complete():
    recs = records()
    assert len(recs) == 18
    counts = {c: sum(r.category is c for r in recs) for c in Category}
    assert counts == {Category.FOG: 5, Category.CLOUD: 7, Category.POLLUTION: 3, Category.SNOW: 3}
    got = [(r.condition, r.category.value, r.visibility_text, r.attenuation_text) for r in recs]
    assert got == TABLE_I


def test_labels_unique_per_category():
    for c in Category:
        labels = [r.condition for r in records() if r.category is c]
        assert len(labels) == len(set(labels))


def test_export_csv():
    rows = list(csv.reader(io.StringIO(export_csv())))
    assert rows[0] == ["condition", "category", "visibility_km", "att_db_per_km_1550"]
    assert [tuple(r) for r in rows[1:]] == TABLE_I


@pytest.mark.parametrize(
    "v, q",
    [(0.05, 0.0), (0.4999, 0.0), (0.5, 0.0), (0.77, 0.27), (1.0, 0.5), (1.9, 0.644),
     (6.0, 1.3), (10, 1.3), (50, 1.3), (50.001, 1.6), (145, 1.6)],
)
def test_kim_q(v, q):
    assert kim_q(v) == pytest.approx(q, abs=1e-12)


@pytest.mark.parametrize("v", [0.0, -1.0])
def test_kim_q_domain(v):
    with pytest.raises(DomainError):
        kim_q(v)


def test_kim_extinction():
    assert kim_extinction(10, 550).value == pytest.approx(0.391, rel=1e-15)
    assert kim_extinction(0.05, 1550).value == pytest.approx(78.2, rel=1e-15)
    b = kim_extinction(145, 1550)
    assert b.unit is Unit.PER_KM
    assert b.value == pytest.approx(oracles.KIM_V145_L1550, rel=1e-12)


def test_kim_wavelength_window():
    with pytest.raises(DomainError):
        kim_extinction(1.0, 400)
    with pytest.raises(DomainError):
        scale_to_wavelength(1.0, 1.0, 1700)


def test_scale_to_wavelength():
    assert scale_to_wavelength(7.0721, 0.05, 850) == 7.0721
    assert scale_to_wavelength(0.123456789, 3.3, 1550) == 0.123456789
    assert scale_to_wavelength(0.0025, 145, 850) == pytest.approx(
        oracles.SCALE_0025_V145_L850, rel=1e-12
    )

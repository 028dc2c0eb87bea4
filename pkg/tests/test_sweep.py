import math

import pytest

from slabfso.analysis.sweep import (
    Axis,
    linear_grid,
    rescale_profile,
    sweep_wavelength,
    sweep_zenith,
)
from slabfso.atmosphere import (
    AtmosphereProfile,
    LayerState,
    Mode,
    Slab,
    effective_transmittance,
    secant,
)
from slabfso.errors import ConfigurationError, DomainError, GeometryError
from slabfso.scenarios import builtin_scenario

import oracles


def test_zenith_single_point_scenario3():
    t = sweep_zenith(builtin_scenario(3, "paper").profile, [0])
    assert t.axis is Axis.ZENITH_DEG
    assert t.transmittances[0] == pytest.approx(oracles.SCENARIO3_ZENITH0_PAPER, rel=1e-12)


def test_zenith_secant_ratio(physical_profile):
    t = sweep_zenith(physical_profile, [0, 60])
    ratio = math.log(t.transmittances[1]) / math.log(t.transmittances[0])
    assert ratio == pytest.approx(2.0, rel=1e-12)


def test_zenith_scenario1_anchor():
    t = sweep_zenith(builtin_scenario(1, "paper").profile, [10])
    assert t.transmittances[0] == pytest.approx(oracles.SCENARIO1_ZENITH10_PAPER, rel=1e-12)


def test_zenith_grid_checks():
    p = builtin_scenario(3).profile
    with pytest.raises(GeometryError):
        sweep_zenith(p, [0, 90])
    with pytest.raises(DomainError):
        sweep_zenith(p, [10, 5])
    with pytest.raises(DomainError):
        sweep_zenith(p, [])


def test_rows_consistent(physical_profile):
    t = sweep_zenith(physical_profile, linear_grid(0, 80, 5))
    for row in t.rows:
        assert 0 < row.transmittance <= 1
        assert row.loss_db == pytest.approx(-10 * math.log10(row.transmittance), abs=1e-9)
    assert all(b < a for a, b in zip(t.transmittances, t.transmittances[1:]))


def _visible_profile():
    # every state carries a visibility, so strict scaling applies
    return AtmosphereProfile(
        "vis",
        [
            Slab(0, 3, [LayerState.db("normal", 0.034, 1.0, 10.0)]),
            Slab(3, 15, [LayerState.db("clear", 0.0025, 1.0, 145.0)]),
        ],
        Mode.PAPER,
    )


def test_wavelength_identity_at_reference():
    p = _visible_profile()
    a = sweep_wavelength(p, [1550], 25.0).rows[0]
    b = sweep_zenith(p, [25.0]).rows[0]
    assert a.transmittance == b.transmittance and a.loss_db == b.loss_db


def test_wavelength_flat_for_dense_fog():
    p = AtmosphereProfile("fog", [Slab(0, 0.2, [LayerState.db("dense", 7.0721, 1.0, 0.05)])])
    t = sweep_wavelength(p, [600, 850, 1064, 1310, 1550], 10)
    assert len(set(t.transmittances)) == 1


def test_wavelength_scenario3_rescale_oracle():
    p = builtin_scenario(3, "paper").profile
    r = sweep_wavelength(p, [850], 10.0, strict=False).rows[0]
    rr = 850 / 1550
    expected = secant(10) * (
        0.034 * 3 * rr ** -1.3 + 0.0025 * 12 * rr ** -1.6 + 0.5 * 0.0104 * 15 + 0.5 * 2.036e-4 * 15
    )
    assert -math.log(r.transmittance) == pytest.approx(expected, rel=1e-12)


def test_wavelength_strict_names_state():
    with pytest.raises(ConfigurationError, match="high-volcanic"):
        sweep_wavelength(builtin_scenario(3).profile, [850, 1550])


def test_rescale_returns_new_profile():
    p = builtin_scenario(3).profile
    q = rescale_profile(p, 850, strict=False)
    assert q.slabs[0].states[0].attenuation.value > p.slabs[0].states[0].attenuation.value
    assert q.slabs[2] == p.slabs[2]
    assert rescale_profile(p, 1550, strict=False) is p


def test_linear_grid():
    assert linear_grid(0, 80, 10) == [0, 10, 20, 30, 40, 50, 60, 70, 80]
    assert linear_grid(850, 1550, 100)[-1] == 1550
    assert linear_grid(0, 1, 0.3) == pytest.approx([0, 0.3, 0.6, 0.9])
    assert linear_grid(0, 0.3, 0.1)[-1] == 0.3
    with pytest.raises(DomainError):
        linear_grid(0, 1, 0)
    with pytest.raises(DomainError):
        linear_grid(2, 1, 0.5)


def test_sweep_reproducible():
    p = builtin_scenario(1, "paper").profile
    g = linear_grid(0, 80, 2.5)
    assert sweep_zenith(p, g) == sweep_zenith(p, g)

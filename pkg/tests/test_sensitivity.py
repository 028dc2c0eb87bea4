import math

import pytest

from slabfso.analysis.budget import link_margin
from slabfso.analysis.sensitivity import (
    boundary_sensitivity,
    perturb_probability,
    probability_sensitivity,
    shift_boundary,
)
from slabfso.atmosphere import AtmosphereProfile, LayerState, LinkGeometry, Slab
from slabfso.errors import DomainError
from slabfso.scenarios import builtin_scenario

FIVE_KM = LinkGeometry(0.0, 0.0, 5.0)


def by_label(reports):
    return {r.perturbation: r for r in reports}


def test_identical_neighbours_zero():
    s = [LayerState.db("haze", 0.3, 0.6), LayerState.db("clear", 0.01, 0.4)]
    p = AtmosphereProfile("same", [Slab(0, 2, s), Slab(2, 5, s), Slab(5, 9, [LayerState.db("x", 0.1)])])
    reps = boundary_sensitivity(p, LinkGeometry(), 0.5)
    first = [r for r in reps if r.perturbation.startswith("boundary 2 km")]
    assert len(first) == 2
    assert all(r.delta_db == 0.0 for r in first)


def test_scenario3_boundary():
    reps = by_label(boundary_sensitivity(builtin_scenario(3).profile, FIVE_KM, 1.0))
    assert set(reps) == {"boundary 3 km +1 km", "boundary 3 km -1 km"}
    assert reps["boundary 3 km +1 km"].delta_db == pytest.approx(0.034 - 0.0025, abs=1e-12)
    assert reps["boundary 3 km -1 km"].delta_db == pytest.approx(-(0.034 - 0.0025), abs=1e-12)


def test_scenario2_fog_boundary_exceeds_claim():
    reps = by_label(boundary_sensitivity(builtin_scenario(2).profile, FIVE_KM, 1.0))
    # pushing the fog boundary up by 1 km absorbs the whole light-fog slab
    r = reps["boundary 1 km +1 km"]
    assert r.feasible
    assert r.delta_db == pytest.approx(1.768 - 0.4592, abs=1e-12)
    assert r.delta_db > 0.3


def test_report_delta_identity(physical_profile):
    for r in boundary_sensitivity(physical_profile, FIVE_KM, 0.5):
        assert r.delta_db == r.perturbed_loss_db - r.baseline_loss_db


def test_infeasible_shift_reported():
    reps = boundary_sensitivity(builtin_scenario(2).profile, FIVE_KM, 1.5)
    bad = [r for r in reps if not r.feasible]
    assert bad and all(math.isnan(r.delta_db) and r.note for r in bad)
    assert any(r.feasible for r in reps)


def test_shift_boundary_errors():
    p = builtin_scenario(2).profile
    with pytest.raises(DomainError):
        shift_boundary(p, 0, -1.5)


def test_boundary_beyond_platform():
    # boundary 3 km pushed to 6 km leaves only the normal slab on a 5 km path
    r = by_label(boundary_sensitivity(builtin_scenario(3).profile, LinkGeometry(0, 0, 5), 3.0))
    assert r["boundary 3 km +3 km"].perturbed_loss_db == pytest.approx(0.034 * 5, abs=1e-12)


def test_odd_symmetry_clear_boundary():
    p = AtmosphereProfile(
        "clear",
        [Slab(0, 3, [LayerState.db("normal", 0.034)]), Slab(3, 15, [LayerState.db("clear", 0.0025)])],
    )
    reps = boundary_sensitivity(p, LinkGeometry(), 0.1)
    plus, minus = reps[0].delta_db, reps[1].delta_db
    assert abs(plus + minus) <= abs(plus - minus)


def test_perturb_probability_renormalizes():
    slab = builtin_scenario(4).profile.slabs[0]
    up = perturb_probability(slab, 0, 1.25)
    assert [s.probability for s in up.states] == pytest.approx([0.875, 0.125])
    capped = perturb_probability(Slab(0, 1, [LayerState.db("a", 1, 0.9), LayerState.db("b", 0, 0.1)]), 0, 1.25)
    assert [s.probability for s in capped.states] == pytest.approx([1.0, 0.0])


def test_scenario4_probability():
    reps = by_label(probability_sensitivity(builtin_scenario(4).profile, FIVE_KM, 0.25))
    r = reps["eta slab 0 extremely-polluted +25%"]
    assert r.delta_db == pytest.approx(0.175 * (0.3536 - 0.034) * 3, abs=1e-12)
    skipped = [r for r in reps.values() if not r.feasible]
    assert [r.note for r in skipped] == ["single-state slab skipped"]


def test_scenario1_volcanic_probability_full_path():
    reps = by_label(probability_sensitivity(builtin_scenario(1).profile, LinkGeometry(), 0.25))
    r = reps["eta slab 2 high-volcanic +25%"]
    assert r.delta_db == pytest.approx(0.125 * (0.0104 - 2.036e-4) * 15, abs=1e-12)


def test_equal_omega_states_zero():
    p = AtmosphereProfile("eq", [Slab(0, 2, [LayerState.db("a", 0.2, 0.3), LayerState.db("b", 0.2, 0.7)])])
    for r in probability_sensitivity(p, LinkGeometry(), 0.25):
        assert r.delta_db == pytest.approx(0.0, abs=1e-15)


def test_fraction_domain():
    with pytest.raises(DomainError):
        probability_sensitivity(builtin_scenario(4).profile, FIVE_KM, 1.0)


# -- link margin ---------------------------------------------------------------


def test_margin_zero_extinction():
    p = AtmosphereProfile("z", [Slab(0, 1, [LayerState.db("c", 0.0)])])
    assert link_margin(p, 0, 10, -30, 0) == 40.0


def test_margin_scenario5():
    assert link_margin(builtin_scenario(5).profile, 0, 10, -30, 2) == pytest.approx(
        40 - 2 - 0.512027, abs=1e-9
    )


def test_margin_non_increasing_in_zenith(physical_profile):
    m = [link_margin(physical_profile, z, 10, -30, 2) for z in range(0, 86, 5)]
    assert all(b <= a for a, b in zip(m, m[1:]))


def test_margin_rejects_nan():
    with pytest.raises(DomainError):
        link_margin(builtin_scenario(5).profile, 0, math.nan, -30)

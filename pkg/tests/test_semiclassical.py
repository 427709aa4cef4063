from fractions import Fraction

import numpy as np
import pytest

from config import PotentialSpec, WellKind
from errors import DomainError
from exact.spectrum import spectrum
from semiclassical.quantize import (JwkbForm, Scheme, action_F, error_table, jwkb_correction, jwkb_correction_closed,
                                    jwkb_spectrum, maslov_index, swkb_spectrum, wkb_spectrum)


def test_action_function():
    assert action_F(0.0) == pytest.approx(1.0)
    assert action_F(1.0) == pytest.approx(0.0, abs=1e-15)
    assert action_F(0.5) == pytest.approx(np.sqrt(0.75) - np.pi / 6)
    values = action_F(np.linspace(0.0, 1.0, 50))
    assert np.all(np.diff(values) < 0)
    for y in (-0.1, 1.5, np.nan):
        with pytest.raises(DomainError):
            action_F(y)


def test_maslov_indices():
    assert maslov_index(PotentialSpec(kind=WellKind.I, a=8.48)) == Fraction(3, 4)
    assert maslov_index(PotentialSpec(kind=WellKind.II, a=8.48)) == Fraction(1, 2)


@pytest.mark.parametrize("a", [8.48, 20.0, 32.0])
def test_odd_wkb_levels_of_well_ii_are_the_well_i_levels(a):
    half = wkb_spectrum(PotentialSpec(kind=WellKind.I, a=a)).energies
    full = wkb_spectrum(PotentialSpec(kind=WellKind.II, a=a)).energies
    odd = full[1::2]
    assert len(odd) == len(half)
    np.testing.assert_allclose(odd, half, atol=1e-12)


def test_wkb_turning_points():
    spec = PotentialSpec(kind=WellKind.I, a=20.0)
    for level in wkb_spectrum(spec).levels:
        assert -spec.u0 * np.exp(-level.turning_point) == pytest.approx(level.energy * spec.u0, rel=1e-12)


@pytest.mark.parametrize("y", [0.2, 0.5, 0.8])
def test_jwkb_correction_matches_closed_form(y):
    a = 32.0
    assert jwkb_correction(a, y) == pytest.approx(jwkb_correction_closed(a, y), rel=1e-5)
    assert jwkb_correction(a, y) < 0


def test_error_table_at_a_32():
    spec = PotentialSpec(kind=WellKind.I, a=32.0)
    table = error_table(spec)
    assert len(table.rows) == 10
    wkb = np.array([row["wkb"] for row in table.rows])
    jwkb = np.array([row["jwkb"] for row in table.rows])
    assert np.all(np.isfinite(wkb)) and np.all(np.isfinite(jwkb))
    assert int(np.argmin(wkb)) == 4
    assert wkb[4] < wkb[0] and wkb[4] < wkb[9]
    assert np.all(jwkb <= wkb)
    assert table.best(9) == Scheme.JWKB
    assert [table.best(n) for n in range(3)] == [Scheme.SWKB] * 3
    assert table.rows[0]["swkb"] <= 1e-8


def test_ordering_switches_from_swkb_to_jwkb():
    table = error_table(PotentialSpec(kind=WellKind.I, a=32.0))
    best = [table.best(n) for n in range(len(table.rows))]
    switch = best.index(Scheme.JWKB)
    assert switch >= 3
    assert all(scheme == Scheme.JWKB for scheme in best[switch:])


def test_wall_term_route_is_kept_as_an_option():
    spec = PotentialSpec(kind=WellKind.I, a=32.0)
    table = error_table(spec, jwkb_form=JwkbForm.INTEGRAL)
    assert len(table.rows) == 10
    assert table.best(9) == Scheme.JWKB
    default = jwkb_spectrum(spec)
    wall = jwkb_spectrum(spec, JwkbForm.INTEGRAL)
    assert len(default.levels) == len(wall.levels) == 10
    np.testing.assert_allclose(default.discrepancies[JwkbForm.SCALED.value],
                               np.abs(default.energies - wall.energies), atol=1e-12)


def test_swkb_gives_every_level_at_a_32():
    result = swkb_spectrum(PotentialSpec(kind=WellKind.I, a=32.0))
    assert len(result.levels) == 10
    assert np.all(np.diff(result.energies) > 0)
    assert all(np.isfinite(level.relative_error) for level in result.levels)


def test_swkb_ground_state_is_exact_for_both_wells():
    for kind in WellKind:
        spec = PotentialSpec(kind=kind, a=8.48)
        result = swkb_spectrum(spec)
        assert result.levels[0].energy == spectrum(spec)[0].energy
        assert len(result.levels) <= len(spectrum(spec))
        assert np.all(np.diff(result.energies) > 0)


def test_jwkb_routes_and_discrepancies():
    spec = PotentialSpec(kind=WellKind.I, a=20.0)
    result = jwkb_spectrum(spec)
    assert set(result.discrepancies) == {JwkbForm.SCALED.value, JwkbForm.PRINTED.value, JwkbForm.PRINTED_SQUARED.value}
    for values in result.discrepancies.values():
        assert len(values) == len(result.levels)
    printed = jwkb_spectrum(spec, JwkbForm.PRINTED)
    assert printed.scheme.id == Scheme.JWKB
    assert len(printed.levels) > 0


def test_jwkb_is_defined_for_well_i_only():
    with pytest.raises(DomainError):
        jwkb_spectrum(PotentialSpec(kind=WellKind.II, a=8.48))


def test_error_table_for_well_ii():
    spec = PotentialSpec(kind=WellKind.II, a=8.48)
    table = error_table(spec, ("wkb", "swkb"))
    assert len(table.rows) == 5
    assert table.schemes == (Scheme.WKB, Scheme.SWKB)
    assert table.rows[0]["E_swkb"] == pytest.approx(table.rows[0]["exact"])
    assert all(np.isfinite(row["wkb"]) for row in table.rows)

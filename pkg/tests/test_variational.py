import numpy as np
import pytest
from scipy.integrate import quad

from config import PotentialSpec, WellKind
from errors import DomainError
from exact.spectrum import critical_a, spectrum
from variational.ansatz import (FamilyId, ansatz_threshold, antisymmetric_extension, crossing, error_curve,
                                exact_reference, family, minimize, trial_function)


def _quadrature_energy(fid, a, eta):
    lower = -np.inf if family(fid).well == WellKind.II else 0.0

    def density(x):
        value, slope = trial_function(fid, eta, x)
        return slope * slope * 4.0 / (a * a) - np.exp(-abs(x)) * value * value

    if lower == 0.0:
        return quad(density, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12)[0]
    left = quad(density, -np.inf, 0.0, epsabs=1e-13, epsrel=1e-12)[0]
    right = quad(density, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12)[0]
    return left + right


@pytest.mark.parametrize("fid", list(FamilyId))
@pytest.mark.parametrize("a, eta", [(3.0, 0.7), (8.48, 1.9), (20.0, 0.25)])
def test_functionals_match_quadrature(fid, a, eta):
    closed = float(family(fid).energy(a, eta))
    assert closed == pytest.approx(_quadrature_energy(fid, a, eta), abs=1e-8)


@pytest.mark.parametrize("fid", list(FamilyId))
def test_trial_functions_are_normalized(fid):
    lower = -np.inf if family(fid).well == WellKind.II else 0.0
    norm = quad(lambda x: trial_function(fid, 1.3, x)[0] ** 2, lower, np.inf)[0]
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_gaussian_ground_state_of_well_ii():
    reference = exact_reference(FamilyId.GAUSSIAN_II, 5.0)
    result = minimize(FamilyId.GAUSSIAN_II, 5.0, reference)
    assert result.exists and result.bound
    assert result.energy == pytest.approx(-0.545, abs=0.005)
    assert result.relative_error <= 0.015


def test_exponential_threshold():
    threshold = ansatz_threshold(FamilyId.EXPONENTIAL_X_I)
    assert threshold == pytest.approx(2.5142, abs=1e-3)
    assert minimize(FamilyId.EXPONENTIAL_X_I, 2.52).exists
    assert not minimize(FamilyId.EXPONENTIAL_X_I, 2.50).exists


def test_gaussian_threshold_lies_above_exponential_one():
    gauss = ansatz_threshold(FamilyId.GAUSSIAN_X_I)
    assert gauss > ansatz_threshold(FamilyId.EXPONENTIAL_X_I) > critical_a()
    assert 2.7 < gauss < 3.0
    assert not minimize(FamilyId.GAUSSIAN_X_I, 2.0).exists


def test_gaussian_x_in_a_deep_well():
    reference = exact_reference(FamilyId.GAUSSIAN_X_I, 32.0)
    result = minimize(FamilyId.GAUSSIAN_X_I, 32.0, reference)
    assert result.exists and result.bound
    assert result.relative_error <= 0.05


@pytest.mark.parametrize("fid, a", [(FamilyId.GAUSSIAN_X_I, 8.48), (FamilyId.EXPONENTIAL_X_I, 5.0),
                                    (FamilyId.GAUSSIAN_II, 5.0), (FamilyId.GAUSSIAN_X_I, 32.0)])
def test_minimum_is_stationary(fid, a):
    result = minimize(fid, a)
    energy = family(fid).energy
    h = 1e-4 * result.eta0
    slope = (float(energy(a, result.eta0 + h)) - float(energy(a, result.eta0 - h))) / (2 * h)
    assert abs(slope) * result.eta0 < 1e-5 * abs(result.energy)
    assert float(energy(a, result.eta0 + h)) >= result.energy
    assert float(energy(a, result.eta0 - h)) >= result.energy


def test_thresholds_only_for_half_line_families():
    with pytest.raises(DomainError):
        ansatz_threshold(FamilyId.GAUSSIAN_II)


@pytest.mark.parametrize("fid", list(FamilyId))
@pytest.mark.parametrize("a", [3.0, 5.0, 8.48, 11.75, 20.0])
def test_upper_bound(fid, a):
    reference = exact_reference(fid, a)
    result = minimize(fid, a, reference)
    if reference is None or not result.exists:
        pytest.skip("no state to bound")
    assert result.energy >= reference - 1e-12


def test_antisymmetric_extension_repeats_the_half_line_numbers():
    a = 8.48
    odd = antisymmetric_extension(a)
    half = minimize(FamilyId.GAUSSIAN_X_I, a)
    assert odd.energy == pytest.approx(half.energy, rel=1e-12)
    assert odd.eta0 == pytest.approx(half.eta0, rel=1e-8)
    # the odd state of U_II is the U_I ground state
    assert exact_reference(FamilyId.ANTISYMMETRIC_II, a) == pytest.approx(
        spectrum(PotentialSpec(kind=WellKind.I, a=a))[0].energy, rel=1e-13)


def test_error_curve_marks_missing_states():
    curve = dict(error_curve(FamilyId.GAUSSIAN_X_I, [2.0, 10.0, 20.0, 32.0]))
    assert np.isnan(curve[2.0])
    assert curve[10.0] > curve[20.0] > curve[32.0] > 0


def test_error_curves_cross_in_a_shallow_trap():
    a = crossing(np.linspace(3.0, 15.0, 13))
    assert a is not None
    assert len(spectrum(PotentialSpec(kind=WellKind.I, a=a))) == 2


def test_invalid_depth():
    with pytest.raises(DomainError):
        minimize(FamilyId.GAUSSIAN_II, 0.0)

import numpy as np
import pytest

from config import PotentialSpec, WellKind
from errors import DepthExceedsLevelsError, DomainError, NoBoundStateError
from exact.spectrum import spectrum, wavefunction, wavefunction_dx
from susy.hierarchy import closed_form_w2, hierarchy, partner_potential, superpotential_I, superpotential_II
from susy.verify import verify_partner_spectrum, verify_scattering_invariance


def test_expected_partner_spectra():
    spec = PotentialSpec(kind=WellKind.I, a=11.75)
    energies = [-0.25 * level.root ** 2 for level in spectrum(spec).levels]
    first, second = hierarchy(spec, 2)
    assert first.expected_spectrum == pytest.approx(tuple(energies[1:]))
    assert second.expected_spectrum == pytest.approx(tuple(energies[2:]))
    assert first.shift == pytest.approx(energies[0])
    assert second.shift == pytest.approx(energies[1])


def test_depth_contract():
    spec = PotentialSpec(kind=WellKind.I, a=8.48)
    with pytest.raises(DomainError):
        hierarchy(spec, 0)
    with pytest.raises(DepthExceedsLevelsError):
        hierarchy(spec, 3)
    with pytest.raises(NoBoundStateError):
        superpotential_I(2.0)


def test_superpotential_limits():
    a = 11.75
    W = superpotential_I(a)
    b0 = spectrum(PotentialSpec(kind=WellKind.I, a=a))[0].root
    assert W(60.0) == pytest.approx(0.5 * b0, rel=1e-10)
    assert W(1e-6) * 1e-6 == pytest.approx(-1.0, rel=1e-3)
    with pytest.raises(DomainError):
        W(-1.0)


def test_well_ii_superpotential_is_odd():
    W = superpotential_II(4.5)
    x = np.linspace(0.01, 15.0, 300)
    np.testing.assert_allclose(W(-x), -W(x), rtol=1e-13)
    assert abs(W(1e-12)) < 1e-9
    assert W.asymptote == pytest.approx(float(W(40.0)), rel=1e-10)


@pytest.mark.parametrize("kind, a", [(WellKind.I, 11.75), (WellKind.II, 4.5)])
def test_factorization_reconstructs_the_well(kind, a):
    spec = PotentialSpec(kind=kind, a=a)
    W = superpotential_I(a) if kind == WellKind.I else superpotential_II(a)
    e0 = -0.25 * spectrum(spec)[0].root ** 2
    x = np.linspace(0.3, 12.0, 200)
    h = 1e-5
    slope = (W(x + h) - W(x - h)) / (2 * h)
    v_minus = W(x) ** 2 - slope
    np.testing.assert_allclose(v_minus, -spec.u0 * np.exp(-x) - e0, atol=1e-6 * spec.u0)


def test_ground_state_is_a_zero_mode():
    spec = PotentialSpec(kind=WellKind.I, a=8.48)
    ground = spectrum(spec)[0]
    W = superpotential_I(spec.a)
    x = np.linspace(0.2, 20.0, 100)
    residual = wavefunction_dx(ground, spec, x) + W(x) * wavefunction(ground, spec, x)
    assert np.max(np.abs(residual)) < 1e-8 * np.max(np.abs(wavefunction(ground, spec, x)))


def test_finite_difference_partner_agrees_with_closed_form():
    W = superpotential_I(11.75)
    x = np.linspace(0.5, 10.0, 50)
    stripped = type(W)(evaluator=W.evaluator, domain=W.domain, asymptote=W.asymptote)
    np.testing.assert_allclose(partner_potential(stripped)(x), partner_potential(W)(x), rtol=1e-7, atol=1e-7)


def test_second_superpotential_matches_closed_form():
    spec = PotentialSpec(kind=WellKind.I, a=11.75)
    second = hierarchy(spec, 2)[1]
    x = np.linspace(0.2, 10.0, 80)
    np.testing.assert_allclose(second.W.evaluator(x), closed_form_w2(spec, x), rtol=1e-8, atol=1e-10)
    assert second.closed_form_deviation < 1e-8


def test_double_well_partner():
    level = hierarchy(PotentialSpec(kind=WellKind.II, a=4.5), 1)[0]
    half = np.linspace(0.0, 12.0, 2401)
    x = np.concatenate([-half[:0:-1], half])
    v = level.V_plus(x)
    inner = v[1:-1]
    minima = x[1:-1][(inner < v[:-2]) & (inner < v[2:])]
    assert len(minima) == 2
    assert minima[0] == pytest.approx(-minima[1], abs=1e-9)
    np.testing.assert_allclose(level.V_plus(-x), v, rtol=1e-12, atol=1e-12)


def test_partner_is_continuous_and_w_is_c1_at_origin():
    level = hierarchy(PotentialSpec(kind=WellKind.II, a=4.5), 1)[0]
    W, dW = level.W.evaluator, level.W.derivative
    for h in (1e-4, 1e-6):
        assert abs(level.V_plus(h) - level.V_plus(-h)) < 1e-12
        assert abs(dW(h) - dW(-h)) < 1e-12
        assert abs(W(h) + W(-h)) < 1e-12
    # the well's kink survives in V_+ as a cusp, a local maximum at the origin
    assert level.V_plus(0.0) > level.V_plus(0.05)


@pytest.mark.slow
def test_well_i_partners_are_isospectral():
    for level in hierarchy(PotentialSpec(kind=WellKind.I, a=11.75), 2):
        report = verify_partner_spectrum(level)
        assert report.passed, report.rows
        assert len(report.rows) == len(level.expected_spectrum)


@pytest.mark.slow
def test_shallow_partner_keeps_one_level():
    level = hierarchy(PotentialSpec(kind=WellKind.I, a=8.48), 1)[0]
    report = verify_partner_spectrum(level)
    assert report.passed
    assert len(report.rows) == 1


@pytest.mark.slow
def test_well_ii_partner_is_isospectral():
    level = hierarchy(PotentialSpec(kind=WellKind.II, a=4.5), 1)[0]
    report = verify_partner_spectrum(level)
    assert report.passed, report.rows


@pytest.mark.slow
def test_scattering_invariance():
    report = verify_scattering_invariance(4.5, (0.2, 0.5, 1.0, 2.0, 10.0))
    assert report.passed, report.rows
    assert report.max_error <= 1e-4

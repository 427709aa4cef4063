import mpmath
import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import erf

from errors import AccuracyLossError, DomainError, PoleError
from specfun.bessel import SERIES_CROSSOVER, bessel_j, bessel_j_dx, bessel_ratio
from specfun.gamma import erfc, erfc_scaled, log_gamma

mpmath.mp.dps = 30


def test_first_zero_of_j0():
    assert abs(bessel_j(0.0, 2.405)) < 1e-3


def test_half_order_closed_form():
    assert abs(bessel_j(0.5, np.pi)) < 1e-15
    x = np.pi / 2
    expected = np.sqrt(2 / (np.pi * x)) * (np.cos(x) - np.sin(x) / (2 * x))
    assert bessel_j_dx(0.5, x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("order, x", [(2.3, 7.1), (0.7, 0.3), (12.5, 32.0), (-1.3, 4.0)])
def test_real_order_against_mpmath(order, x):
    assert bessel_j(order, x) == pytest.approx(float(mpmath.besselj(order, x)), rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("beta, x", [(0.2, 1.0), (0.7, 5.0), (1.5, 11.9), (1.5, 12.1), (2.0, 30.0)])
def test_imaginary_order_against_mpmath(beta, x):
    reference = complex(mpmath.besselj(1j * beta, x))
    assert abs(bessel_j(1j * beta, x) - reference) <= 1e-9 * max(1.0, abs(reference))


def test_series_and_ode_agree_across_crossover():
    below = bessel_j(1j * 0.8, SERIES_CROSSOVER - 1e-9)
    above = bessel_j(1j * 0.8, SERIES_CROSSOVER + 1e-9)
    assert abs(below - above) < 1e-9


def test_derivative_matches_finite_difference():
    h = 1e-5
    for order in (1.7, 0.0, 1j * 0.9):
        for x in (0.5, 5.0, 11.0):
            central = (bessel_j(order, x + h) - bessel_j(order, x - h)) / (2 * h)
            assert abs(bessel_j_dx(order, x) - central) < 1e-6


def test_conjugation_symmetry():
    for beta in (0.1, 1.0, 4.0):
        x = np.array([0.5, 3.0, 9.0, 25.0])
        np.testing.assert_allclose(bessel_j(-1j * beta, x), np.conj(bessel_j(1j * beta, x)), atol=1e-10)


def test_wronskian():
    for nu in (0.25, 1.6, 3.3):
        for x in (0.8, 6.0, 40.0):
            w = bessel_j(nu, x) * bessel_j_dx(-nu, x) - bessel_j(-nu, x) * bessel_j_dx(nu, x)
            assert w == pytest.approx(-2 * np.sin(nu * np.pi) / (np.pi * x), abs=1e-8)


def test_ratio_stays_finite_where_j_underflows():
    z = np.array([1e-30, 1e-8, 0.5, 0.999, 1.001, 5.0])
    ratio = bessel_ratio(20.0, z)
    assert np.all(np.isfinite(ratio))
    np.testing.assert_allclose(ratio[:2], 20.0 / z[:2], rtol=1e-12)
    direct = bessel_j_dx(20.0, z[2:]) / bessel_j(20.0, z[2:])
    np.testing.assert_allclose(ratio[2:], direct, rtol=1e-9)


def test_argument_and_box_errors():
    with pytest.raises(DomainError):
        bessel_j(1.0, 0.0)
    with pytest.raises(DomainError):
        bessel_j(1.0 + 1.0j, 2.0)
    with pytest.raises(AccuracyLossError):
        bessel_j(1.0, 65.0)
    with pytest.raises(AccuracyLossError):
        bessel_j(70.0, 10.0)


def test_log_gamma():
    assert abs(log_gamma(1.0)) < 1e-15
    assert log_gamma(0.5).real == pytest.approx(np.log(np.sqrt(np.pi)), rel=1e-14)
    assert abs(log_gamma(1 + 2j) - complex(mpmath.loggamma(1 + 2j))) < 1e-12
    with pytest.raises(PoleError):
        log_gamma(-3.0)


def test_erfc():
    assert erfc(0.0) == 1.0
    assert 0.0 <= erfc(30.0) < 1e-300
    integral, _ = quad(lambda t: np.exp(-t * t), 1.5, np.inf, epsabs=0, epsrel=1e-14)
    assert erfc(1.5) == pytest.approx(2 / np.sqrt(np.pi) * integral, rel=1e-12)
    for x in (-2.0, 0.3, 1.7):
        assert erfc(x) + float(erf(x)) == pytest.approx(1.0, abs=1e-12)


def test_scaled_erfc_does_not_overflow():
    eta = 40.0
    assert erfc_scaled(eta) == pytest.approx(float(mpmath.exp(eta ** 2) * mpmath.erfc(eta)), rel=1e-12)

"""
Bessel functions of the first kind J_nu(x) on the two order axes the wells need:
real order (bound states, nu = b) and purely imaginary order (scattering, nu = i*beta).

Real order goes through scipy.special (AMOS/Cephes, which handles nu < 0 through the
J/Y connection formula). Imaginary order is summed as a power series with complex
log-gamma weights for x <= SERIES_CROSSOVER and continued beyond by integrating the
Bessel equation x^2 y'' + x y' + (x^2 - nu^2) y = 0 from the series value at the crossover.
"""
from typing import Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gammaln, jv, jvp, loggamma

from errors import AccuracyLossError, DomainError

MAX_ORDER = 64.0
MAX_ARG = 64.0
SERIES_CROSSOVER = 12.0
SERIES_TERMS = 90

Order = Union[float, complex]


def _split_order(order: Order) -> Tuple[bool, complex]:
    nu = complex(order)
    if nu.imag == 0.0:
        return True, nu
    if nu.real != 0.0:
        raise DomainError(f"order {order} is neither real nor purely imaginary")
    return False, nu


def _check_box(nu: complex, x: np.ndarray) -> None:
    if np.any(~np.isfinite(x)) or np.any(x <= 0):
        raise DomainError("Bessel argument must be positive and finite")
    if abs(nu) > MAX_ORDER or np.any(x > MAX_ARG):
        raise AccuracyLossError(
            f"(order={nu}, arg<={np.max(x):g}) outside validated box |order|<={MAX_ORDER:g}, arg<={MAX_ARG:g}"
        )


def _series(nu: complex, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """J_nu(x) and dJ_nu/dx from the ascending series, termwise differentiated."""
    k = np.arange(SERIES_TERMS, dtype=float)[:, None]
    log_half = np.log(0.5 * x)[None, :]
    log_terms = (2.0 * k + nu) * log_half - gammaln(k + 1.0) - loggamma(k + 1.0 + nu)
    terms = np.where(k % 2 == 0, 1.0, -1.0) * np.exp(log_terms)
    value = terms.sum(axis=0)
    slope = (terms * (2.0 * k + nu)).sum(axis=0) / x
    return value, slope


def _integrate_past_crossover(nu: complex, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    x0 = SERIES_CROSSOVER
    j0, dj0 = _series(nu, np.array([x0]))
    nu2 = nu * nu

    def rhs(t, y):
        return [y[1], -y[1] / t - (1.0 - nu2 / (t * t)) * y[0]]

    targets = np.unique(x)
    scale = max(abs(j0[0]), abs(dj0[0]), 1e-300)
    sol = solve_ivp(rhs, (x0, targets[-1]), [complex(j0[0]), complex(dj0[0])], method="DOP853",
                    t_eval=targets, rtol=1e-12, atol=1e-15 * scale)
    if not sol.success:
        raise AccuracyLossError(f"Bessel ODE continuation failed: {sol.message}")
    index = np.searchsorted(targets, x)
    return sol.y[0][index], sol.y[1][index]


def _imaginary_order(nu: complex, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    value = np.empty(x.shape, dtype=complex)
    slope = np.empty(x.shape, dtype=complex)
    near = x <= SERIES_CROSSOVER
    if np.any(near):
        value[near], slope[near] = _series(nu, x[near])
    if np.any(~near):
        value[~near], slope[~near] = _integrate_past_crossover(nu, x[~near])
    return value, slope


def _evaluate(order: Order, arg, derivative: bool):
    is_real, nu = _split_order(order)
    x = np.atleast_1d(np.asarray(arg, dtype=float))
    _check_box(nu, x)
    if is_real:
        out = jvp(nu.real, x) if derivative else jv(nu.real, x)
    else:
        value, slope = _imaginary_order(nu, x)
        out = slope if derivative else value
    return out if np.ndim(arg) else out[0]


def bessel_j(order: Order, arg):
    """
    J_order(arg) for real or purely imaginary order.

    Args:
        order: real float, or complex with zero real part
        arg: positive real scalar or array, at most MAX_ARG

    Returns:
        float (array) for real order, complex (array) for imaginary order
    """
    return _evaluate(order, arg, derivative=False)


def bessel_j_dx(order: Order, arg):
    """dJ_order/dx, equal to (J_{order-1} - J_{order+1})/2."""
    return _evaluate(order, arg, derivative=True)


RATIO_SERIES_LIMIT = 1.0
RATIO_TERMS = 30


def _scaled_series_ratio(nu: float, z: np.ndarray) -> np.ndarray:
    # J_nu(z) = (z/2)^nu S(z) / Gamma(nu + 1), S summed without the underflowing prefactor
    k = np.arange(RATIO_TERMS, dtype=float)[:, None]
    q = (0.25 * z * z)[None, :]
    coefficients = np.exp(-gammaln(k + 1.0) - gammaln(k + nu + 1.0) + gammaln(nu + 1.0))
    terms = np.where(k % 2 == 0, 1.0, -1.0) * coefficients * q ** k
    s = terms.sum(axis=0)
    ds = (terms * k).sum(axis=0) * 2.0 / z
    return nu / z + ds / s


def bessel_ratio(order: float, arg):
    """
    J'_order(arg)/J_order(arg) for real order; used by the superpotentials.

    Below RATIO_SERIES_LIMIT the ratio comes from the normalized ascending series, which
    stays finite where J itself underflows.
    """
    is_real, nu = _split_order(order)
    if not is_real or nu.real < 0:
        return bessel_j_dx(order, arg) / bessel_j(order, arg)
    x = np.atleast_1d(np.asarray(arg, dtype=float))
    _check_box(nu, x)
    out = np.empty(x.shape)
    small = x < RATIO_SERIES_LIMIT
    if np.any(small):
        out[small] = _scaled_series_ratio(nu.real, x[small])
    if np.any(~small):
        out[~small] = jvp(nu.real, x[~small]) / jv(nu.real, x[~small])
    return out if np.ndim(arg) else out[0]

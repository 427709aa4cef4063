import numpy as np
from scipy.special import erfc as _erfc, erfcx, loggamma

from errors import PoleError


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == np.floor(z.real):
        raise PoleError(f"log_gamma has a pole at z={z.real:g}")
    return complex(loggamma(z))


def erfc(x: float) -> float:
    return float(_erfc(x))


def erfc_scaled(x):
    """exp(x^2) * erfc(x), finite for large x where the plain product overflows."""
    return erfcx(x)

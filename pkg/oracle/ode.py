"""
Direct ODE scattering: integrate psi'' = (V(x) - k^2) psi across the potential and read
the reflection and transmission amplitudes off the plane-wave decomposition.
"""
from typing import Callable, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from errors import DomainError, OracleConvergenceError
from log import get_logger

logger = get_logger("oracle")

NEGLIGIBLE = 1e-10


class ScatterAmplitudes(NamedTuple):
    r: complex
    t: complex

    @property
    def unitarity_defect(self) -> float:
        return abs(abs(self.r) ** 2 + abs(self.t) ** 2 - 1.0)


def _integrate(potential: Callable, k: float, start: float, stop: float, rtol: float,
               kinks: Sequence[float] = ()) -> Tuple[complex, complex]:
    direction = 1.0 if stop > start else -1.0
    # outgoing plane wave on the transmission side
    wave = np.exp(-1j * direction * k * start)
    y = [wave, -1j * direction * k * wave]

    def rhs(x, y):
        return [y[1], (potential(x) - k * k) * y[0]]

    # restart the integrator at derivative kinks of the potential
    inner = sorted((p for p in kinks if min(start, stop) < p < max(start, stop)), reverse=direction < 0)
    nodes = [start, *inner, stop]
    for left, right in zip(nodes[:-1], nodes[1:]):
        sol = solve_ivp(rhs, (left, right), y, method="DOP853", rtol=rtol, atol=rtol * 1e-2,
                        max_step=np.pi / (4.0 * k) if k > 1.0 else np.inf)
        if not sol.success:
            raise OracleConvergenceError(f"scattering integration failed: {sol.message}")
        y = [sol.y[0, -1], sol.y[1, -1]]
    return y[0], y[1]


def ode_scatter(potential: Callable, k: float, domain: Tuple[float, float], incident: str = "left",
                kinks: Sequence[float] = (),
                rtol: float = 1e-11) -> ScatterAmplitudes:
    """
    Reflection and transmission amplitudes for a wave of number k.

    Args:
        potential: V(x) in units hbar = 1, 2m = 1 (energy E = k^2)
        k (float): incident wave number, > 0
        domain: (x_lo, x_hi) with |V| < 1e-10 at both ends
        incident (str): "left" (wave e^{ikx} from -inf) or "right"
        kinks: points where V has a derivative jump (the integrator restarts there)

    Returns:
        ScatterAmplitudes: (r, t) with psi ~ e^{ikx} + r e^{-ikx} on the incident side
    """
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    x_lo, x_hi = domain
    for edge in (x_lo, x_hi):
        if abs(potential(edge)) > NEGLIGIBLE:
            raise DomainError(f"potential not negligible at domain edge x={edge:g}: {potential(edge):.2e}")

    if incident == "left":
        psi, slope = _integrate(potential, k, x_hi, x_lo, rtol, kinks)
        sign = 1.0
        x_in = x_lo
    elif incident == "right":
        psi, slope = _integrate(potential, k, x_lo, x_hi, rtol, kinks)
        sign = -1.0
        x_in = x_hi
    else:
        raise DomainError(f"unknown incident side {incident!r}")

    # on the incident side psi = A e^{i s k x} + B e^{-i s k x}
    incoming = 0.5 * (psi + slope / (1j * sign * k)) * np.exp(-1j * sign * k * x_in)
    outgoing = 0.5 * (psi - slope / (1j * sign * k)) * np.exp(1j * sign * k * x_in)
    result = ScatterAmplitudes(r=complex(outgoing / incoming), t=complex(1.0 / incoming))
    if result.unitarity_defect > 1e-6:
        logger.warning(f"k={k:g}: |r|^2+|t|^2 off by {result.unitarity_defect:.1e}, domain may be too small")
    return result

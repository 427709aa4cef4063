"""
Variational ground-state estimates with one-parameter trial families.

All functionals return <phi|H|phi>/U0 as a function of (a, eta). Internal units are
hbar = 1, 2m = 1, alpha = 1 (U0 = a^2/4), so every family splits into a kinetic part
c/(a^2 eta^2) and an a-independent potential part P(eta).

Width variables:
    Gaussian families       eta = sigma / sqrt(2)
    exponential family      eta = s = sigma
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from config import PotentialSpec, WellKind
from errors import DomainError
from exact.spectrum import spectrum
from log import get_logger
from specfun.gamma import erfc_scaled

logger = get_logger("variational")

SQRT_PI = np.sqrt(np.pi)
ETA_MIN, ETA_MAX = 1e-3, 50.0
SCAN = np.logspace(np.log10(ETA_MIN), np.log10(ETA_MAX), 500)
BOUND_MARGIN = 1e-12


class FamilyId(str, Enum):
    GAUSSIAN_X_I = "gauss-x"
    EXPONENTIAL_X_I = "exp-x"
    GAUSSIAN_II = "gauss-ii"
    ANTISYMMETRIC_II = "antisym"


def _potential_gaussian_x(eta):
    eta = np.asarray(eta, dtype=float)
    return -((1.0 + 2.0 * eta * eta) * erfc_scaled(eta) - 2.0 * eta / SQRT_PI)


def _potential_exponential(eta):
    return -8.0 / (2.0 + np.asarray(eta, dtype=float)) ** 3


def _potential_gaussian(eta):
    return -erfc_scaled(np.asarray(eta, dtype=float))


def energy_gaussian_x_I(a: float, eta):
    """x e^{-x^2/4 sigma^2} on the half line: 3/(2 a^2 eta^2) - [(1 + 2 eta^2) erfcx(eta) - 2 eta/sqrt(pi)]."""
    eta = np.asarray(eta, dtype=float)
    return 1.5 / (a * a * eta * eta) + _potential_gaussian_x(eta)


def energy_exponential_I(a: float, eta):
    """2 x e^{-x/s} / s^{3/2}: kinetic 1/s^2, potential -8 U0 / (2 + s)^3."""
    s = np.asarray(eta, dtype=float)
    return 4.0 / (a * a * s * s) + _potential_exponential(s)


def energy_gaussian_II(a: float, eta):
    """Nodeless Gaussian on the full line: 1/(2 a^2 eta^2) - erfcx(eta)."""
    eta = np.asarray(eta, dtype=float)
    return 0.5 / (a * a * eta * eta) + _potential_gaussian(eta)


@dataclass(frozen=True)
class AnsatzFamily:
    id: FamilyId
    energy_functional: Callable
    kinetic: float
    potential: Callable
    well: WellKind
    target_level: int
    width_map: str

    def energy(self, a: float, eta):
        return self.energy_functional(a, eta)


GAUSSIAN_WIDTH = "eta = alpha sigma / sqrt(2)"

FAMILIES: Dict[FamilyId, AnsatzFamily] = {
    FamilyId.GAUSSIAN_X_I: AnsatzFamily(FamilyId.GAUSSIAN_X_I, energy_gaussian_x_I, 1.5, _potential_gaussian_x,
                                        WellKind.I, 0, GAUSSIAN_WIDTH),
    FamilyId.EXPONENTIAL_X_I: AnsatzFamily(FamilyId.EXPONENTIAL_X_I, energy_exponential_I, 4.0,
                                           _potential_exponential, WellKind.I, 0, "eta = alpha sigma"),
    FamilyId.GAUSSIAN_II: AnsatzFamily(FamilyId.GAUSSIAN_II, energy_gaussian_II, 0.5, _potential_gaussian,
                                       WellKind.II, 0, GAUSSIAN_WIDTH),
    # odd extension of the half-line family: same integrals, first excited state of U_II
    FamilyId.ANTISYMMETRIC_II: AnsatzFamily(FamilyId.ANTISYMMETRIC_II, energy_gaussian_x_I, 1.5,
                                            _potential_gaussian_x, WellKind.II, 1, GAUSSIAN_WIDTH),
}


def family(family_id) -> AnsatzFamily:
    return FAMILIES[FamilyId(family_id)]


def trial_function(family_id, eta: float, x) -> Tuple[np.ndarray, np.ndarray]:
    """Normalized trial wavefunction and its x-derivative (internal units)."""
    fid = FamilyId(family_id)
    x = np.asarray(x, dtype=float)
    if fid == FamilyId.EXPONENTIAL_X_I:
        s = eta
        value = 2.0 * x * np.exp(-x / s) / s ** 1.5
        return value, 2.0 * (1.0 - x / s) * np.exp(-x / s) / s ** 1.5
    sigma = np.sqrt(2.0) * eta
    gauss = np.exp(-x * x / (4.0 * sigma * sigma))
    if fid == FamilyId.GAUSSIAN_II:
        value = (2.0 * np.pi) ** -0.25 / np.sqrt(sigma) * gauss
        return value, -x / (2.0 * sigma * sigma) * value
    scale = (2.0 / np.pi) ** 0.25 / sigma ** 1.5
    if fid == FamilyId.ANTISYMMETRIC_II:
        # half of the norm on each side
        scale /= np.sqrt(2.0)
    value = scale * x * gauss
    return value, scale * (1.0 - x * x / (2.0 * sigma * sigma)) * gauss


@dataclass(frozen=True)
class VariationalResult:
    family: FamilyId
    a: float
    eta0: float
    energy: float
    exists: bool
    bound: bool
    relative_error: Optional[float] = None


def _stationary_minima(energy: Callable[[np.ndarray], np.ndarray]) -> List[Tuple[float, float]]:
    values = energy(SCAN)
    minima = []
    for i in range(1, len(SCAN) - 1):
        if values[i] < values[i - 1] and values[i] < values[i + 1]:
            result = minimize_scalar(lambda eta: float(energy(eta)), method="golden",
                                     bracket=(SCAN[i - 1], SCAN[i], SCAN[i + 1]), tol=1e-10)
            eta0 = float(result.x)
            h = 1e-4 * eta0
            curvature = (energy(eta0 + h) - 2.0 * energy(eta0) + energy(eta0 - h)) / (h * h)
            if curvature > 0:
                minima.append((eta0, float(result.fun)))
    return minima


def minimize(family_id, a: float, reference: Optional[float] = None) -> VariationalResult:
    """
    Global minimum of the family's functional over eta in [1e-3, 50].

    A result exists when the functional has a stationary minimum (dE/deta = 0 with
    positive curvature) inside the scanned range; `bound` additionally requires
    E(eta0) < -1e-12. Endpoint plateaus never count as minima.

    Args:
        family_id: FamilyId or its CLI name
        a (float): depth parameter
        reference (Optional[float]): exact energy / U0 for the relative error

    Returns:
        VariationalResult
    """
    spec = family(family_id)
    if not a > 0:
        raise DomainError("a must be positive")
    minima = _stationary_minima(lambda eta: spec.energy(a, eta))
    if not minima:
        return VariationalResult(spec.id, a, float("nan"), float("nan"), exists=False, bound=False)
    eta0, energy = min(minima, key=lambda item: item[1])
    error = abs(reference - energy) / abs(reference) if reference is not None else None
    return VariationalResult(spec.id, a, eta0, energy, exists=True, bound=energy < -BOUND_MARGIN,
                             relative_error=error)


def antisymmetric_extension(a: float) -> VariationalResult:
    """First excited state of U_II from the odd extension of the half-line Gaussian family."""
    return minimize(FamilyId.ANTISYMMETRIC_II, a, exact_reference(FamilyId.ANTISYMMETRIC_II, a))


def _depth_for_stationarity(spec: AnsatzFamily, eta: float) -> float:
    # dE/deta = 0  <=>  a^2 = 2 c / (eta^3 P'(eta))
    h = 1e-5 * eta
    slope = (spec.potential(eta + h) - spec.potential(eta - h)) / (2.0 * h)
    if slope <= 0:
        return np.inf
    return 2.0 * spec.kinetic / (eta ** 3 * slope)


def ansatz_threshold(family_id) -> float:
    """
    Smallest a at which a half-line family acquires a stationary minimum.

    Below it dE/deta never vanishes; at it the minimum and maximum are born together,
    so the threshold is sqrt(min over eta of 2c / (eta^3 P'(eta))).
    """
    spec = family(family_id)
    if spec.well != WellKind.I:
        raise DomainError("thresholds are defined for the U_I families")
    samples = np.array([_depth_for_stationarity(spec, eta) for eta in SCAN])
    best = int(np.argmin(samples))
    if best in (0, len(SCAN) - 1):
        raise DomainError(f"threshold of {spec.id.value} not inside eta range")
    result = minimize_scalar(lambda log_eta: _depth_for_stationarity(spec, np.exp(log_eta)), method="bounded",
                             bounds=(np.log(SCAN[best - 1]), np.log(SCAN[best + 1])),
                             options={"xatol": 1e-10})
    threshold = float(np.sqrt(result.fun))
    logger.info(f"{spec.id.value}: a_c^ansatz = {threshold:.6f}")
    return threshold


def exact_reference(family_id, a: float) -> Optional[float]:
    """Exact E/U0 of the state a family targets, None when that state does not exist."""
    spec = family(family_id)
    levels = spectrum(PotentialSpec(kind=spec.well, a=a)).levels
    if len(levels) <= spec.target_level:
        return None
    return levels[spec.target_level].energy


def error_curve(family_id, a_grid: Sequence[float]) -> List[Tuple[float, float]]:
    """(a, relative error) pairs; NaN where the family or the exact state is missing."""
    curve = []
    for a in a_grid:
        reference = exact_reference(family_id, a)
        result = minimize(family_id, a, reference)
        if reference is None or not result.exists:
            curve.append((float(a), float("nan")))
        else:
            curve.append((float(a), result.relative_error))
    return curve


def _error_gap(a: float) -> float:
    errors = []
    for fid in (FamilyId.GAUSSIAN_X_I, FamilyId.EXPONENTIAL_X_I):
        errors.append(minimize(fid, a, exact_reference(fid, a)).relative_error)
    return errors[0] - errors[1]


def crossing(a_grid: Sequence[float]) -> Optional[float]:
    """a where the Gaussian and exponential U_I error curves cross (first sign change)."""
    gauss = np.array([d for _, d in error_curve(FamilyId.GAUSSIAN_X_I, a_grid)])
    expo = np.array([d for _, d in error_curve(FamilyId.EXPONENTIAL_X_I, a_grid)])
    gap = gauss - expo
    for i in range(len(gap) - 1):
        if np.isfinite(gap[i]) and np.isfinite(gap[i + 1]) and gap[i] * gap[i + 1] < 0:
            return float(brentq(_error_gap, a_grid[i], a_grid[i + 1], xtol=1e-6))
    return None


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Variational estimate of a ground state.")
    parser.add_argument("--family", choices=[f.value for f in FamilyId], default="gauss-ii")
    parser.add_argument("--a", type=float, default=5.0)
    args = parser.parse_args()
    print(minimize(args.family, args.a, exact_reference(args.family, args.a)))

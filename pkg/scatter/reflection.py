"""
Scattering off U_II: closed-form reflection probability in terms of Bessel functions of
imaginary order b = i*beta, where E/U0 = (beta/a)^2 and k = beta/2 in internal units.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.optimize import minimize_scalar

from config import n_jobs
from errors import DomainError, ExpwellError, NearSingularError
from log import get_logger
from specfun.bessel import bessel_j, bessel_j_dx

logger = get_logger("scatter")

SINGULAR_SCALE = 1e-300


@dataclass(frozen=True)
class ScatteringPoint:
    a: float
    beta: float

    def __post_init__(self):
        if not self.a > 0 or not self.beta > 0:
            raise DomainError(f"scattering needs a > 0 and beta > 0, got a={self.a}, beta={self.beta}")

    @property
    def k(self) -> float:
        return 0.5 * self.beta


@dataclass(frozen=True)
class ScatteringResult:
    r: complex
    R: float

    @property
    def T(self) -> float:
        return 1.0 - self.R


def reflection(point: ScatteringPoint) -> ScatteringResult:
    """
    R = |J_b(a)/J_{-b}(a) + J'_b(a)/J'_{-b}(a)|^2 / 4 with b = i*beta.
    """
    b = 1j * point.beta
    j_plus, j_minus = bessel_j(b, point.a), bessel_j(-b, point.a)
    dj_plus, dj_minus = bessel_j_dx(b, point.a), bessel_j_dx(-b, point.a)
    if abs(j_minus) < SINGULAR_SCALE or abs(dj_minus) < SINGULAR_SCALE:
        raise NearSingularError(f"a={point.a:g}, beta={point.beta:g}: vanishing J_(-i beta) denominator")
    r = 0.5 * (j_plus / j_minus + dj_plus / dj_minus)
    probability = r * np.conj(r)
    if abs(probability.imag) > 1e-12:
        logger.warning(f"a={point.a:g}, beta={point.beta:g}: Im|r|^2 = {probability.imag:.1e}")
    return ScatteringResult(r=complex(r), R=float(min(max(probability.real, 0.0), 1.0)))


def _row(a: float, betas: np.ndarray) -> np.ndarray:
    row = np.full(len(betas), np.nan)
    for j, beta in enumerate(betas):
        try:
            row[j] = reflection(ScatteringPoint(a, beta)).R
        except ExpwellError as e:
            logger.debug(f"a={a:g}, beta={beta:g} left missing: {e}")
    return row


@dataclass
class ReflectionMap:
    a_values: np.ndarray
    beta_values: np.ndarray
    R: np.ndarray  # rows follow a, columns follow beta

    def triplets(self):
        for i, a in enumerate(self.a_values):
            for j, beta in enumerate(self.beta_values):
                yield a, beta, self.R[i, j]


def reflection_map(a_range: Tuple[float, float, int], beta_range: Tuple[float, float, int],
                   jobs: Optional[int] = None) -> ReflectionMap:
    """
    R over the Cartesian product of two linspaces; unevaluable cells become NaN.

    Args:
        a_range: (a_min, a_max, count)
        beta_range: (beta_min, beta_max, count)
    """
    a_values = _axis(*a_range)
    beta_values = _axis(*beta_range)
    rows = Parallel(n_jobs=jobs or n_jobs())(delayed(_row)(a, beta_values) for a in a_values)
    logger.info(f"reflection map {len(a_values)}x{len(beta_values)} done")
    return ReflectionMap(a_values, beta_values, np.vstack(rows))


def _axis(lo: float, hi: float, count: int) -> np.ndarray:
    if not (lo > 0 and hi > 0):
        raise DomainError("map ranges must be positive")
    if count == 1:
        return np.array([float(lo)])
    if count < 1:
        raise DomainError("map axis needs a positive count")
    return np.linspace(lo, hi, count)


def max_wavelength_gradient(beta: float) -> float:
    """Max over the well of d(lambda_dB)/dX: 4 pi / (3 sqrt(3) beta)."""
    if not beta > 0:
        raise DomainError("beta must be positive")
    return 4.0 * np.pi / (3.0 * np.sqrt(3.0) * beta)


def wavelength_gradient(X, beta: float, a: float):
    """
    |d lambda_dB / dX| for E/U0 = (beta/a)^2 over U_II at |X|, with lambda_dB = 2 pi / p(X)
    and p^2 = E - U(X) in internal units.
    """
    u0 = 0.25 * a * a
    energy = 0.25 * beta * beta
    well = u0 * np.exp(-np.abs(X))
    return np.pi * well / (energy + well) ** 1.5


def numeric_max_wavelength_gradient(beta: float, a: Optional[float] = None,
                                    samples: Sequence[float] = None) -> float:
    """Golden-section maximization of wavelength_gradient over X >= 0."""
    a = a or max(10.0, 4.0 * beta)
    grid = np.linspace(0.0, 60.0, 1201) if samples is None else np.asarray(samples)
    values = wavelength_gradient(grid, beta, a)
    best = int(np.argmax(values))
    if best == 0 or best == len(grid) - 1:
        return float(values[best])
    result = minimize_scalar(lambda X: -wavelength_gradient(X, beta, a), method="golden",
                             bracket=(grid[best - 1], grid[best], grid[best + 1]), tol=1e-10)
    return float(-result.fun)


def scattering_extent(a: float) -> float:
    """Half-width beyond which U_II (internal units) is below 1e-10."""
    return float(np.log(0.25 * a * a * 1e10) + 1.0)


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Reflection probability of U_II.")
    parser.add_argument("--a", type=float, default=4.0)
    parser.add_argument("--beta", type=float, default=1.0)
    args = parser.parse_args()
    result = reflection(ScatteringPoint(args.a, args.beta))
    print(f"|r|^2={result.R:.15f} T={result.T:.15f}")

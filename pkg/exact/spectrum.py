"""
Exact bound spectra of the exponential wells.

Internal units: hbar = 1, 2m = 1, alpha = 1, so the Schrodinger equation reads
psi'' + (a^2 e^{-|X|} - b^2) psi / 4 = 0 and a level with Bessel-order root b has
E/U0 = -(b/a)^2. Bound states are the zeros *in the order* of J_nu(a) (odd / hard-wall
states) and of J'_nu(a) (even states).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import gamma, jn_zeros, jv, jvp

from config import PotentialSpec, Settings, WellKind
from errors import AccuracyLossError, DomainError, MissedRootError
from log import get_logger
from specfun.bessel import MAX_ARG, bessel_j, bessel_j_dx

logger = get_logger("exact")

_SETTINGS = Settings()


class RootKind(str, Enum):
    VALUE = "value"
    DERIVATIVE = "derivative"


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


@dataclass(frozen=True)
class BoundLevel:
    index: int
    root: float
    parity: Parity
    energy: float
    norm: float


@dataclass(frozen=True)
class BoundSpectrum:
    spec: PotentialSpec
    levels: Tuple[BoundLevel, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, n: int) -> BoundLevel:
        return self.levels[n]

    @property
    def energies(self) -> np.ndarray:
        return np.array([level.energy for level in self.levels])

    @property
    def roots(self) -> np.ndarray:
        return np.array([level.root for level in self.levels])


def critical_a() -> float:
    """First zero of J_0: below it U_I has no bound state."""
    return float(jn_zeros(0, 1)[0])


def tail_extent(a: float, root: float) -> float:
    """X beyond which |psi| has decayed below ~1e-12 of its peak (psi ~ exp(-root X / 2))."""
    return 2.0 * np.log(a / root) + 40.0 / root


def potential(spec: PotentialSpec, x):
    """U(x)/U0 in dimensionless position X; U_I is +inf on X <= 0."""
    x = np.asarray(x, dtype=float)
    if spec.kind == WellKind.I:
        with np.errstate(over="ignore"):
            return np.where(x > 0, -np.exp(-np.abs(x)), np.inf)
    return -np.exp(-np.abs(x))


def order_zeros(a: float, kind: RootKind = RootKind.VALUE, step: Optional[float] = None,
                min_root: Optional[float] = None) -> List[float]:
    """
    All orders nu > 0 with J_nu(a) = 0 (VALUE) or J'_nu(a) = 0 (DERIVATIVE), descending.

    Scans nu from a down to min_root (no root can exceed a), brackets sign changes and
    refines each bracket with Brent's method.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    if a > MAX_ARG:
        raise AccuracyLossError(f"a={a} outside validated range a<={MAX_ARG:g}")
    step = step or _SETTINGS.scan_step
    min_root = min_root or _SETTINGS.min_root
    kind = RootKind(kind)

    def f(nu):
        return jvp(nu, a) if kind == RootKind.DERIVATIVE else jv(nu, a)

    if a <= min_root:
        return []
    grid = np.append(np.arange(a, min_root, -step), min_root)
    values = f(grid)
    roots = []
    for i in range(len(grid) - 1):
        hi, lo = grid[i], grid[i + 1]
        if values[i] == 0.0:
            roots.append(float(hi))
        elif values[i] * values[i + 1] < 0.0:
            roots.append(float(brentq(f, lo, hi, xtol=_SETTINGS.root_xtol * 1e-2, rtol=4 * np.finfo(float).eps)))
    logger.debug(f"a={a:g} {kind.value}: {len(roots)} roots")
    return sorted(roots, reverse=True)


def _norm(a: float, root: float, kind: WellKind) -> float:
    # int_0^inf J_b(a e^{-X/2})^2 dX = 2 int_0^a J_b(z)^2 / z dz; the z^(2b-1) endpoint
    # behaviour is handed to the algebraic weight so small roots stay accurate
    head = 1.0 / (2.0 ** root * gamma(root + 1.0))

    def smooth(z):
        if z < 1e-6:
            return head * head
        return (jv(root, z) / z ** root) ** 2

    integral, _ = quad(smooth, 0.0, a, weight="alg", wvar=(2.0 * root - 1.0, 0.0),
                       epsabs=0.0, epsrel=1e-12, limit=200)
    integral *= 2.0
    if kind == WellKind.II:
        integral *= 2.0
    return 1.0 / np.sqrt(integral)


def spectrum(spec: PotentialSpec) -> BoundSpectrum:
    """
    Bound levels of U_I or U_II sorted by energy (index 0 = ground).

    Args:
        spec (PotentialSpec): well kind and depth parameter a

    Returns:
        BoundSpectrum: immutable list of BoundLevel
    """
    a = spec.a
    tagged = [(root, Parity.ODD if spec.kind == WellKind.II else Parity.NONE)
              for root in order_zeros(a, RootKind.VALUE)]
    if spec.kind == WellKind.II:
        tagged += [(root, Parity.EVEN) for root in order_zeros(a, RootKind.DERIVATIVE)]
    tagged.sort(key=lambda item: -item[0])
    levels = tuple(
        BoundLevel(index=n, root=root, parity=parity, energy=-(root / a) ** 2,
                   norm=_norm(a, root, spec.kind))
        for n, (root, parity) in enumerate(tagged)
    )
    logger.info(f"well {spec.kind.value}, a={a:g}: {len(levels)} bound states")
    return BoundSpectrum(spec=spec, levels=levels)


def _check_domain(spec: PotentialSpec, x: np.ndarray) -> None:
    if spec.kind == WellKind.I and np.any(x < 0):
        raise DomainError("U_I wavefunctions are defined on x >= 0 only")


def _bessel_argument(spec: PotentialSpec, x: np.ndarray) -> np.ndarray:
    z = spec.a * np.exp(-0.5 * np.abs(x))
    return np.maximum(z, np.finfo(float).tiny)


def _to_internal(spec: PotentialSpec, x):
    x = np.asarray(x, dtype=float)
    if spec.units is not None:
        return x * spec.units.alpha, np.sqrt(spec.units.alpha)
    return x, 1.0


def wavefunction(level: BoundLevel, spec: PotentialSpec, x):
    """
    Normalized psi_n at x. With spec.units set, x is a physical length and psi is
    normalized in that length.
    """
    X, scale = _to_internal(spec, x)
    _check_domain(spec, X)
    z = _bessel_argument(spec, X)
    psi = level.norm * bessel_j(level.root, z)
    if level.parity == Parity.ODD:
        psi = np.sign(X) * psi
    return scale * psi


def wavefunction_dx(level: BoundLevel, spec: PotentialSpec, x):
    """d psi_n / dx, in the same length units as wavefunction."""
    X, scale = _to_internal(spec, x)
    _check_domain(spec, X)
    z = _bessel_argument(spec, X)
    slope = -0.5 * z * level.norm * bessel_j_dx(level.root, z)
    if level.parity == Parity.EVEN:
        slope = np.sign(X) * slope
    if spec.units is not None:
        scale *= spec.units.alpha
    return scale * slope


def audit_level_count(spec: PotentialSpec, bound: Optional[BoundSpectrum] = None) -> int:
    """Cross-check the Bessel-root count against the grid oracle's negative eigenvalues."""
    from oracle.grid import count_bound_states
    bound = bound or spectrum(spec)
    found = count_bound_states(spec, bound)
    if found != len(bound):
        raise MissedRootError(f"well {spec.kind.value}, a={spec.a:g}: {len(bound)} Bessel roots "
                              f"but oracle finds {found} bound states")
    return found


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Exact bound spectrum of an exponential well.")
    parser.add_argument("--well", choices=["I", "II"], default="II")
    parser.add_argument("--a", type=float, default=8.48)
    args = parser.parse_args()
    for level in spectrum(PotentialSpec(kind=args.well, a=args.a)).levels:
        print(f"n={level.index} root={level.root:.12f} parity={level.parity.value} E/U0={level.energy:.12f}")

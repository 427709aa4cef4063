"""
Supersymmetric partner hierarchy of the exponential wells.

Units: hbar = 1, 2m = 1, alpha = 1, so W = -psi_0'/psi_0 and V_(+/-) = W^2 +/- W'.
Energies are absolute internal energies (E = -b^2/4, U0 = a^2/4).

Rung j of the hierarchy is the Hamiltonian -d^2 + U_j with spectrum {E_j, E_(j+1), ...}.
Its eigenfunctions are carried as (value, derivative) pairs so every superpotential and
partner potential stays a closed-form expression:

    W_j  = -phi_0'/phi_0            W_j' = W_j^2 - U_j + E_j
    U_(j+1) = 2 W_j^2 - U_j + 2 E_j
    phi_n^(j+1) = phi_(n+1)' + W_j phi_(n+1)
    phi_n^(j+1)' = (W_j^2 + E_j - E) phi_(n+1) + W_j phi_(n+1)'
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from config import PotentialSpec, WellKind
from errors import DepthExceedsLevelsError, DomainError, NoBoundStateError
from exact.spectrum import BoundSpectrum, spectrum, wavefunction, wavefunction_dx
from log import get_logger
from specfun.bessel import bessel_ratio

logger = get_logger("susy")

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SuperPotential:
    evaluator: Evaluator
    domain: Tuple[float, float]
    asymptote: float
    derivative: Optional[Evaluator] = None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if np.any(x <= lo) or np.any(x >= hi):
            raise DomainError(f"superpotential evaluated outside open domain {self.domain}")
        return self.evaluator(x)


@dataclass(frozen=True)
class SusyLevel:
    depth: int
    W: SuperPotential
    V_plus: Evaluator
    shift: float
    expected_spectrum: Tuple[float, ...]
    spec: PotentialSpec
    closed_form_deviation: Optional[float] = None

    def shifted_potential(self, x):
        """V_+^(k)(x) + E_(k-1): the partner drawn on the parent's energy axis."""
        return self.V_plus(x) + self.shift


def _well(spec: PotentialSpec) -> Evaluator:
    u0 = spec.u0
    return lambda x: -u0 * np.exp(-np.abs(x))


def _internal(spec: PotentialSpec) -> PotentialSpec:
    # rungs live in internal lengths whatever units the caller attached
    return spec.model_copy(update={"units": None}) if spec.units is not None else spec


def _domain(spec: PotentialSpec) -> Tuple[float, float]:
    return (0.0, np.inf) if spec.kind == WellKind.I else (-np.inf, np.inf)


def _ground_superpotential(spec: PotentialSpec, bound: BoundSpectrum) -> SuperPotential:
    a = spec.a
    ground = bound[0]
    b0 = ground.root
    energy = -0.25 * b0 * b0
    well = _well(spec)
    symmetric = spec.kind == WellKind.II

    def W(x):
        z = np.maximum(a * np.exp(-0.5 * np.abs(x)), np.finfo(float).tiny)
        value = 0.5 * z * bessel_ratio(b0, z)
        return np.sign(x) * value if symmetric else value

    def dW(x):
        return W(x) ** 2 - well(x) + energy

    return SuperPotential(evaluator=W, domain=_domain(spec), asymptote=0.5 * b0, derivative=dW)


def superpotential_I(a: float) -> SuperPotential:
    """
    W^(1) for U_I: (z/2) J'_(b0)(z) / J_(b0)(z) with z = a e^(-x/2).

    Tends to b0/2 = sqrt(|E_0|) at infinity and to -1/x at the wall.
    """
    spec = PotentialSpec(kind=WellKind.I, a=a)
    bound = spectrum(spec)
    if not len(bound):
        raise NoBoundStateError(f"U_I with a={a:g} has no bound state (a_c ~ 2.405)")
    return _ground_superpotential(spec, bound)


def superpotential_II(a: float) -> SuperPotential:
    """W^(1) for U_II: odd in x, zero at the origin where the even ground state peaks."""
    spec = PotentialSpec(kind=WellKind.II, a=a)
    return _ground_superpotential(spec, spectrum(spec))


def partner_potential(W: SuperPotential, step: float = 1e-3) -> Evaluator:
    """
    V_+ = W^2 + W'. Uses W.derivative when present, otherwise a 5-point central
    difference with a step scaled to |x|.
    """
    if W.derivative is not None:
        def v_plus(x):
            x = np.asarray(x, dtype=float)
            return W(x) ** 2 + W.derivative(x)
        return v_plus

    lo, hi = W.domain

    def v_plus(x):
        x = np.asarray(x, dtype=float)
        h = step * np.maximum(1.0, np.abs(x))
        if np.any(x - 2 * h <= lo) or np.any(x + 2 * h >= hi):
            raise DomainError("partner potential requested within one stencil of the domain edge")
        slope = (W(x - 2 * h) - 8 * W(x - h) + 8 * W(x + h) - W(x + 2 * h)) / (12 * h)
        return W(x) ** 2 + slope

    return v_plus


@dataclass
class _Rung:
    potential: Evaluator
    energies: List[float]
    eigenpair: Callable[[int, np.ndarray], Tuple[np.ndarray, np.ndarray]]
    domain: Tuple[float, float]

    def superpotential(self) -> SuperPotential:
        ground_energy = self.energies[0]
        potential = self.potential
        asymptote = np.sqrt(-ground_energy)

        def W(x):
            value, slope = self.eigenpair(0, x)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = -slope / value
            # the ground state underflows deep in the tail, where W has reached its asymptote
            return np.where(np.isfinite(ratio), ratio, np.sign(x) * asymptote)

        def dW(x):
            return W(x) ** 2 - potential(x) + ground_energy

        return SuperPotential(evaluator=W, domain=self.domain, asymptote=asymptote,
                              derivative=dW)

    def partner(self, W: SuperPotential) -> "_Rung":
        ground_energy = self.energies[0]
        parent = self

        def potential(x):
            return 2.0 * W.evaluator(x) ** 2 - parent.potential(x) + 2.0 * ground_energy

        def eigenpair(n, x):
            value, slope = parent.eigenpair(n + 1, x)
            w = W.evaluator(x)
            energy = parent.energies[n + 1]
            return slope + w * value, (w * w + ground_energy - energy) * value + w * slope

        return _Rung(potential, self.energies[1:], eigenpair, self.domain)


def _base_rung(spec: PotentialSpec, bound: BoundSpectrum) -> _Rung:
    spec = _internal(spec)

    def eigenpair(n, x):
        level = bound[n]
        return wavefunction(level, spec, x), wavefunction_dx(level, spec, x)

    energies = [-0.25 * level.root ** 2 for level in bound.levels]
    return _Rung(_well(spec), energies, eigenpair, _domain(spec))


def closed_form_w2(spec: PotentialSpec, x, bound: Optional[BoundSpectrum] = None):
    """
    W^(2) of U_I written directly in psi_0, psi_1 and their first two derivatives:
    -[psi_0(psi_0 psi_1'' - psi_0'' psi_1 - psi_0' psi_1') + psi_0'^2 psi_1]
     / [psi_0 (psi_0 psi_1' - psi_0' psi_1)]
    """
    bound = bound or spectrum(spec)
    if len(bound) < 2:
        raise DepthExceedsLevelsError("W^(2) needs two bound states")
    spec = _internal(spec)
    x = np.asarray(x, dtype=float)
    well = _well(spec)(x)
    p0, p1 = (wavefunction(bound[n], spec, x) for n in (0, 1))
    d0, d1 = (wavefunction_dx(bound[n], spec, x) for n in (0, 1))
    e0, e1 = (-0.25 * bound[n].root ** 2 for n in (0, 1))
    dd0, dd1 = (well - e0) * p0, (well - e1) * p1
    numerator = p0 * (p0 * dd1 - dd0 * p1 - d0 * d1) + d0 * d0 * p1
    return -numerator / (p0 * (p0 * d1 - d0 * p1))


def hierarchy(spec: PotentialSpec, depth: int) -> List[SusyLevel]:
    """
    The first `depth` rungs of the partner hierarchy.

    Args:
        spec (PotentialSpec): parent well
        depth (int): 1 <= depth <= number of bound states

    Returns:
        List[SusyLevel]: level k (1-based) holds W^(k), the un-shifted V_+^(k), the shift
        E_(k-1) and the expected bound spectrum {E_k, E_(k+1), ...}
    """
    if depth < 1:
        raise DomainError("hierarchy depth must be a positive integer")
    bound = spectrum(spec)
    if depth > len(bound):
        raise DepthExceedsLevelsError(f"depth {depth} exceeds the {len(bound)} bound states of a={spec.a:g}")

    rung = _base_rung(spec, bound)
    levels = []
    for k in range(1, depth + 1):
        W = _ground_superpotential(spec, bound) if k == 1 else rung.superpotential()
        shift = rung.energies[0]
        partner = rung.partner(W)
        deviation = None
        if k == 2 and spec.kind == WellKind.I:
            probe = np.linspace(0.1, 10.0, 200)
            closed = closed_form_w2(spec, probe, bound)
            deviation = float(np.max(np.abs(W.evaluator(probe) - closed) / np.maximum(1.0, np.abs(closed))))
            logger.debug(f"W^(2) generic vs closed form: {deviation:.1e}")

        def v_plus(x, partner=partner, shift=shift):
            return partner.potential(np.asarray(x, dtype=float)) - shift

        levels.append(SusyLevel(depth=k, W=W, V_plus=v_plus, shift=shift,
                                expected_spectrum=tuple(partner.energies), spec=spec,
                                closed_form_deviation=deviation))
        rung = partner
    logger.info(f"well {spec.kind.value}, a={spec.a:g}: built {depth} partner level(s)")
    return levels


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="SUSY partner hierarchy of an exponential well.")
    parser.add_argument("--well", choices=["I", "II"], default="I")
    parser.add_argument("--a", type=float, default=11.75)
    parser.add_argument("--depth", type=int, default=2)
    args = parser.parse_args()
    for level in hierarchy(PotentialSpec(kind=args.well, a=args.a), args.depth):
        print(f"k={level.depth} shift={level.shift:.10f} expected={level.expected_spectrum}")

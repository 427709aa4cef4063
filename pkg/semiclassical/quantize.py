"""
Semiclassical quantization of the exponential wells: WKB with a Maslov index, JWKB with
the first hbar^2 correction, and SWKB built on the ground-state superpotential.

Internal units hbar = 1, 2m = 1, alpha = 1: U0 = a^2/4, E = -U0 y^2 and the half-well
action is int_0^x_t sqrt(E - U) dx = a F(y). Reported energies are E/U0.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import bisect, brentq

from config import PotentialSpec, WellKind
from errors import DomainError, ExpwellError
from exact.spectrum import spectrum
from log import get_logger

logger = get_logger("semiclassical")

Y_TOL = 1e-14
Y_FLOOR = 1e-4
FD_STEP = 1e-4


class Scheme(str, Enum):
    WKB = "wkb"
    JWKB = "jwkb"
    SWKB = "swkb"


class JwkbForm(str, Enum):
    SCALED = "scaled"
    INTEGRAL = "integral"
    PRINTED = "printed"
    PRINTED_SQUARED = "printed-squared"


@dataclass(frozen=True)
class QuantizationScheme:
    id: Scheme
    maslov: Optional[Fraction]


def maslov_index(spec: PotentialSpec) -> Fraction:
    """Smooth turning point 1/4, hard wall 1/2: U_I has one of each, U_II two smooth ones."""
    return Fraction(3, 4) if spec.kind == WellKind.I else Fraction(1, 2)


@dataclass(frozen=True)
class QuantizedLevel:
    n: int
    y: float
    energy: float
    relative_error: float
    turning_point: float


@dataclass(frozen=True)
class QuantizationResult:
    scheme: QuantizationScheme
    spec: PotentialSpec
    levels: Tuple[QuantizedLevel, ...]
    overshoot: bool = False
    discrepancies: Dict[str, Tuple[float, ...]] = field(default_factory=dict)
    messages: Tuple[str, ...] = ()

    @property
    def energies(self) -> np.ndarray:
        return np.array([level.energy for level in self.levels])


def action_F(y):
    """F(y) = sqrt(1 - y^2) - y arccos(y) on [0, 1]."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(y_arr)) or np.any(y_arr < 0.0) or np.any(y_arr > 1.0):
        raise DomainError("action_F is defined on 0 <= y <= 1")
    value = np.sqrt(1.0 - y_arr * y_arr) - y_arr * np.arccos(y_arr)
    return value if np.ndim(y) else float(value)


def _relative_errors(energies: List[float], exact: np.ndarray) -> List[float]:
    errors = []
    for n, energy in enumerate(energies):
        if n < len(exact):
            errors.append(abs(energy - exact[n]) / abs(exact[n]))
        else:
            errors.append(float("nan"))
    return errors


def _build(scheme: QuantizationScheme, spec: PotentialSpec, ys: List[float], energies: List[float],
           turning: List[float], **extra) -> QuantizationResult:
    exact = spectrum(spec).energies
    errors = _relative_errors(energies, exact)
    levels = tuple(QuantizedLevel(n, y, e, err, x) for n, (y, e, err, x) in enumerate(zip(ys, energies, errors, turning)))
    overshoot = len(levels) > len(exact) + 1
    if len(levels) > len(exact):
        logger.warning(f"{scheme.id.value}: {len(levels)} levels against {len(exact)} exact")
    return QuantizationResult(scheme, spec, levels, overshoot=overshoot, **extra)


def _solve_y(condition, label: str) -> float:
    """Root in y of a condition decreasing from positive (y ~ 0) to negative (y ~ 1)."""
    hi = 0.999
    while condition(hi) >= 0.0:
        hi = 1.0 - 0.1 * (1.0 - hi)
        if 1.0 - hi < 1e-12:
            raise ExpwellError(f"{label}: no bracket below y = 1")
    return float(bisect(condition, Y_FLOOR, hi, xtol=Y_TOL))


def wkb_spectrum(spec: PotentialSpec) -> QuantizationResult:
    """
    (n + nu) pi / (g a) = F(y_n) with nu = 3/4, g = 1 for U_I and nu = 1/2, g = 2 for U_II.

    The turning point x_n = -2 ln y_n is recorded with every level.
    """
    nu = float(maslov_index(spec))
    g = 1.0 if spec.kind == WellKind.I else 2.0
    ys, energies, turning = [], [], []
    n = 0
    while (n + nu) * np.pi / (g * spec.a) < 1.0:
        target = (n + nu) * np.pi / (g * spec.a)
        y = float(bisect(lambda t: action_F(t) - target, 0.0, 1.0, xtol=Y_TOL))
        ys.append(y)
        energies.append(-y * y)
        turning.append(-2.0 * np.log(y) if y > 0 else np.inf)
        n += 1
    logger.info(f"WKB well {spec.kind.value}, a={spec.a:g}: {len(ys)} levels")
    return _build(QuantizationScheme(Scheme.WKB, maslov_index(spec)), spec, ys, energies, turning)


def _curvature_integral(a: float, energy: float) -> float:
    # int_0^x_t U''(x) / sqrt(E - U(x)) dx with x = x_t - s^2 removing the turning-point singularity
    u0 = 0.25 * a * a
    x_t = np.log(-u0 / energy)
    scale = -energy

    def integrand(s):
        x = x_t - s * s
        gap = scale * np.expm1(s * s)
        return -u0 * np.exp(-x) * 2.0 * s / np.sqrt(gap)

    value, _ = quad(integrand, 0.0, np.sqrt(x_t), epsabs=0.0, epsrel=1e-12, limit=200)
    return value


def jwkb_correction(a: float, y: float) -> float:
    """
    First hbar^2 correction delta(y) in (n + 3/4) = a F(y)/pi + delta for U_I.

    The smooth part is -(1/24 pi) d/dE int U''/sqrt(E - U) dx, the energy derivative a
    once-Richardson-extrapolated central difference. The hard wall adds the reflection-phase
    term -5 U'(0) / (48 pi (E - U(0))^{3/2}).
    """
    u0 = 0.25 * a * a
    energy = -u0 * y * y
    h = FD_STEP * min(-energy, energy + u0)

    def slope(step):
        return (_curvature_integral(a, energy + step) - _curvature_integral(a, energy - step)) / (2.0 * step)

    derivative = (4.0 * slope(0.5 * h) - slope(h)) / 3.0
    smooth = -derivative / (24.0 * np.pi)
    wall = -5.0 * u0 / (48.0 * np.pi * (energy + u0) ** 1.5)
    return smooth + wall


def jwkb_correction_closed(a: float, y: float) -> float:
    """Closed form of jwkb_correction: -(3 + 2 y^2) / (24 pi a (1 - y^2)^{3/2})."""
    return -(3.0 + 2.0 * y * y) / (24.0 * np.pi * a * (1.0 - y * y) ** 1.5)


def _printed_condition(a: float, n: int, squared: bool):
    def condition(y):
        root = np.sqrt(1.0 - y * y) if squared else np.sqrt(1.0 - y)
        return action_F(y) - 1.0 / (12.0 * np.pi * a * root) - (n + 0.75)
    return condition


def _scaled_condition(a: float, n: int):
    # action on the same footing as the WKB condition, a F(y)/pi
    def condition(y):
        return a * action_F(y) / np.pi - 1.0 / (12.0 * np.pi * a * np.sqrt(1.0 - y * y)) - (n + 0.75)
    return condition


def _jwkb_levels(a: float, form: JwkbForm) -> List[float]:
    ys = []
    n = 0
    while True:
        if form == JwkbForm.INTEGRAL:
            def condition(y, n=n):
                return a * action_F(y) / np.pi + jwkb_correction(a, y) - (n + 0.75)
        elif form == JwkbForm.SCALED:
            condition = _scaled_condition(a, n)
        else:
            condition = _printed_condition(a, n, squared=form == JwkbForm.PRINTED_SQUARED)
        if condition(Y_FLOOR) <= 0.0:
            break
        ys.append(_solve_y(condition, f"JWKB n={n}"))
        n += 1
    return ys


def jwkb_spectrum(spec: PotentialSpec, form: JwkbForm = JwkbForm.SCALED) -> QuantizationResult:
    """
    JWKB levels of U_I.

    Args:
        spec (PotentialSpec): a U_I spec
        form (JwkbForm): SCALED, a F(y)/pi - 1/(12 pi a sqrt(1 - y^2)) (default);
            INTEGRAL, the numerical delta with its hard-wall term; or one of the two printed
            closed forms kept verbatim, F(y) - 1/(12 pi a sqrt(1 - y)) and its sqrt(1 - y^2) variant

    Returns:
        QuantizationResult: levels of the chosen form; `discrepancies` holds, per other
        route, |E_integral - E_route| level by level (NaN where one side is missing)
    """
    if spec.kind != WellKind.I:
        raise DomainError("JWKB is available for U_I only")
    a = spec.a
    routes = {}
    messages = []
    for variant in JwkbForm:
        try:
            routes[variant] = [-y * y for y in _jwkb_levels(a, variant)]
        except (ExpwellError, ValueError) as e:
            messages.append(f"{variant.value}: {e}")
            routes[variant] = []
            logger.warning(f"JWKB {variant.value} route failed: {e}")

    reference = routes[JwkbForm.INTEGRAL]
    discrepancies = {}
    for variant in (JwkbForm.SCALED, JwkbForm.PRINTED, JwkbForm.PRINTED_SQUARED):
        other = routes[variant]
        discrepancies[variant.value] = tuple(
            abs(reference[n] - other[n]) if n < len(other) else float("nan") for n in range(len(reference))
        )

    energies = routes[form]
    ys = [float(np.sqrt(-e)) for e in energies]
    turning = [-2.0 * np.log(y) for y in ys]
    logger.info(f"JWKB ({form.value}) a={a:g}: {len(ys)} levels")
    return _build(QuantizationScheme(Scheme.JWKB, maslov_index(spec)), spec, ys, energies, turning,
                  discrepancies=discrepancies, messages=tuple(messages))


def _superpotential(spec: PotentialSpec):
    from susy.hierarchy import superpotential_I, superpotential_II
    return superpotential_I(spec.a) if spec.kind == WellKind.I else superpotential_II(spec.a)


def _crossing(W, level: float, lo: float, hi: float) -> float:
    """x in (lo, hi) with W(x) = level; hi is pushed outward until it brackets."""
    step = max(hi - lo, 1.0)
    while W(hi) < level:
        hi += step
        step *= 2.0
        if hi > 1000.0:
            raise ExpwellError(f"no turning point for W = {level:g}")
    return float(brentq(lambda x: W(x) - level, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps))


class _SwkbAction:
    """int sqrt(E^- - W^2) dx between the two roots of W^2 = E^-."""

    def __init__(self, spec: PotentialSpec):
        self.W = _superpotential(spec)
        self.symmetric = spec.kind == WellKind.II
        if self.symmetric:
            self.center = 0.0
        else:
            self.center = _crossing(self.W, 0.0, 1e-8, 1.0)

    def turning_points(self, energy: float) -> Tuple[float, float]:
        root = np.sqrt(energy)
        right = _crossing(self.W, root, self.center, self.center + 1.0)
        if self.symmetric:
            return -right, right
        left = float(brentq(lambda x: self.W(x) + root, 1e-12, self.center, xtol=1e-15,
                            rtol=4 * np.finfo(float).eps))
        return left, right

    def __call__(self, energy: float) -> float:
        if energy <= 0.0:
            return 0.0
        left, right = self.turning_points(energy)
        half = 0.5 * (right - left)
        middle = 0.5 * (right + left)

        # x = middle - half cos(theta) turns the square-root endpoints into smooth zeros
        def integrand(theta):
            x = middle - half * np.cos(theta)
            gap = energy - float(self.W(x)) ** 2
            return np.sqrt(max(gap, 0.0)) * half * np.sin(theta)

        value, _ = quad(integrand, 0.0, np.pi, epsabs=1e-13, epsrel=1e-11, limit=400)
        return value


def swkb_spectrum(spec: PotentialSpec) -> QuantizationResult:
    """
    Levels E_n = E_0 + E^-_n with int sqrt(E^-_n - W^2) dx = n pi; n = 0 gives E_0 exactly.

    Enumeration stops at the exact count, or earlier once n pi exceeds the action at the
    top of W^2 (no turning point left).
    """
    bound = spectrum(spec)
    if not len(bound):
        raise DomainError(f"well {spec.kind.value}, a={spec.a:g} has no bound state")
    u0 = spec.u0
    ground = bound[0].energy * u0
    top = -ground
    action = _SwkbAction(spec)
    ceiling = top * (1.0 - 1e-10)
    ys, energies, turning = [float(np.sqrt(-bound[0].energy))], [bound[0].energy], [action.center]
    messages = []
    try:
        limit = action(ceiling)
    except ExpwellError as e:
        limit = 0.0
        messages.append(str(e))
    for n in range(1, len(bound)):
        if n * np.pi > limit:
            messages.append(f"n={n}: n pi above the action at the top of W^2 ({limit:.6f})")
            break
        shifted = float(brentq(lambda e: action(e) - n * np.pi, 0.0, ceiling, xtol=1e-12 * top,
                               rtol=4 * np.finfo(float).eps))
        energy = (ground + shifted) / u0
        ys.append(float(np.sqrt(-energy)))
        energies.append(energy)
        turning.append(action.turning_points(shifted)[1])
    logger.info(f"SWKB well {spec.kind.value}, a={spec.a:g}: {len(energies)} levels")
    return _build(QuantizationScheme(Scheme.SWKB, None), spec, ys, energies, turning, messages=tuple(messages))


@dataclass
class ErrorTable:
    spec: PotentialSpec
    schemes: Tuple[Scheme, ...]
    rows: List[Dict[str, float]] = field(default_factory=list)

    def best(self, n: int) -> Optional[Scheme]:
        """Scheme with the smallest finite error at level n."""
        row = self.rows[n]
        finite = [(row[s.value], s) for s in self.schemes if np.isfinite(row[s.value])]
        return min(finite)[1] if finite else None

    @property
    def highest(self) -> Dict[str, float]:
        return self.rows[-1]


def error_table(spec: PotentialSpec, schemes: Iterable = tuple(Scheme),
                jwkb_form: JwkbForm = JwkbForm.SCALED) -> ErrorTable:
    """
    Relative error (key = scheme name) and energy (key = "E_" + name) per exact level
    and per scheme; missing levels are NaN.

    Args:
        spec (PotentialSpec): well and depth
        schemes: any of Scheme (or their names)
        jwkb_form (JwkbForm): which JWKB route fills the jwkb column
    """
    schemes = tuple(Scheme(s) for s in schemes)
    exact = spectrum(spec)
    columns = {}
    for scheme in schemes:
        try:
            if scheme == Scheme.WKB:
                result = wkb_spectrum(spec)
            elif scheme == Scheme.JWKB:
                result = jwkb_spectrum(spec, jwkb_form)
            else:
                result = swkb_spectrum(spec)
            columns[scheme] = [(level.energy, level.relative_error) for level in result.levels]
        except ExpwellError as e:
            logger.warning(f"{scheme.value} column left empty: {e}")
            columns[scheme] = []

    table = ErrorTable(spec=spec, schemes=schemes)
    for n in range(len(exact)):
        row = {"n": n, "exact": float(exact[n].energy)}
        for scheme in schemes:
            values = columns[scheme]
            energy, error = values[n] if n < len(values) else (float("nan"), float("nan"))
            row[f"E_{scheme.value}"] = energy
            row[scheme.value] = error
        table.rows.append(row)
    return table


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Semiclassical spectra of an exponential well.")
    parser.add_argument("--well", choices=["I", "II"], default="I")
    parser.add_argument("--a", type=float, default=32.0)
    args = parser.parse_args()
    well = PotentialSpec(kind=args.well, a=args.a)
    schemes = tuple(Scheme) if args.well == "I" else (Scheme.WKB, Scheme.SWKB)
    for row in error_table(well, schemes).rows:
        print(row)

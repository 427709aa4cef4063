"""
Oracle cross-checks of the SUSY claims: isospectrality of each partner (grid
diagonalization) and equality of reflection probabilities (direct ODE scattering).
"""
from typing import Iterable, Optional

import numpy as np

from config import PotentialSpec, WellKind
from errors import ExpwellError
from exact.spectrum import spectrum
from log import get_logger
from oracle.grid import Boundary, GridProblem, default_extent, grid_diagonalize, resolved_points
from oracle.ode import NEGLIGIBLE, ode_scatter
from oracle.report import VerificationReport
from scatter.reflection import ScatteringPoint, reflection, scattering_extent
from susy.hierarchy import SusyLevel, hierarchy

logger = get_logger("susy")

WALL_OFFSET = 1e-4


def _partner_problem(level: SusyLevel, points: Optional[int], wall_offset: float) -> GridProblem:
    spec = level.spec
    roots = spectrum(spec).roots
    x_max = default_extent(spec.a, float(roots.min()))
    if spec.kind == WellKind.I:
        # the 1/x^2 core of the partner forces psi(0) = 0; put the wall just off the pole
        n = points or resolved_points(x_max, spec.u0, 4096)
        return GridProblem(level.V_plus, wall_offset * x_max, x_max, n, Boundary.DIRICHLET_LEFT_DECAY_RIGHT)
    # odd count keeps the cusp of V_+ at x = 0 on a node
    n = (points or resolved_points(2.0 * x_max, spec.u0, 4096)) | 1
    return GridProblem(level.V_plus, -x_max, x_max, n, Boundary.DECAY_BOTH)


def _bound_energies(level: SusyLevel, problem: GridProblem) -> np.ndarray:
    result = grid_diagonalize(problem, len(level.expected_spectrum) + 2)
    shifted = result.eigenvalues + level.shift
    return shifted[shifted < 0]


def verify_partner_spectrum(level: SusyLevel, points: Optional[int] = None,
                            tolerance: float = 1e-5) -> VerificationReport:
    """
    Diagonalize V_+^(k) on a grid and match its bound levels against {E_k, E_(k+1), ...}.
    """
    name = f"partner spectrum k={level.depth} (well {level.spec.kind.value}, a={level.spec.a:g})"
    expected = np.array(level.expected_spectrum)
    try:
        problem = _partner_problem(level, points, WALL_OFFSET)
        found = _bound_energies(level, problem)
    except ExpwellError as e:
        logger.warning(f"{name}: oracle failed: {e}")
        return VerificationReport(name=name, passed=False, max_error=np.inf, messages=[str(e)])

    report = VerificationReport(name=name, passed=len(found) == len(expected))
    if len(found) != len(expected):
        report.messages.append(f"partner has {len(found)} bound levels, expected {len(expected)}")
    for n, (value, target) in enumerate(zip(found, expected)):
        error = abs(value - target) / abs(target)
        report.rows.append({"n": n, "expected": float(target), "oracle": float(value), "relative_error": error})
        report.max_error = max(report.max_error, error)
    report.passed = report.passed and report.max_error <= tolerance

    if level.spec.kind == WellKind.I and len(found):
        closer = _bound_energies(level, _partner_problem(level, points, WALL_OFFSET / 2))
        if len(closer) == len(found):
            drift = float(np.max(np.abs(closer - found) / np.abs(found)))
            report.messages.append(f"wall-offset sensitivity {drift:.1e}")
    logger.info(f"{name}: {'pass' if report.passed else 'FAIL'} (max rel err {report.max_error:.1e})")
    return report


def _extent(potential, start: float) -> float:
    extent = start
    while max(abs(potential(extent)), abs(potential(-extent))) > NEGLIGIBLE and extent < 200:
        extent += 2.0
    return extent


def verify_scattering_invariance(a: float, beta_grid: Iterable[float],
                                 tolerance: float = 1e-4) -> VerificationReport:
    """
    Closed-form |r|^2 of U_II against ODE scattering on V_+^(1) + E_0, per beta.

    Also checks the amplitude relation r_+ = r_- (w + ik)/(w - ik), with w the asymptote
    of W; for W(+-inf) = 0 it reduces to r_+ = -r_-.
    """
    spec = PotentialSpec(kind=WellKind.II, a=a)
    level = hierarchy(spec, 1)[0]
    partner = level.shifted_potential
    u0 = spec.u0

    def well(x):
        return -u0 * np.exp(-np.abs(x))

    extent = _extent(partner, scattering_extent(a) + 3.0)
    w = level.W.asymptote
    report = VerificationReport(name=f"scattering invariance (a={a:g})", passed=True)
    for beta in beta_grid:
        k = 0.5 * beta
        try:
            closed = reflection(ScatteringPoint(a, beta)).R
            plus = ode_scatter(partner, k, (-extent, extent), kinks=(0.0,))
            minus = ode_scatter(well, k, (-extent, extent), kinks=(0.0,))
        except ExpwellError as e:
            report.passed = False
            report.messages.append(f"beta={beta:g}: {e}")
            continue
        deviation = abs(closed - abs(plus.r) ** 2)
        phase = abs(plus.r - minus.r * (w + 1j * k) / (w - 1j * k))
        report.rows.append({"beta": float(beta), "R_closed": closed, "R_partner": abs(plus.r) ** 2,
                            "deviation": deviation, "amplitude_relation": phase})
        report.max_error = max(report.max_error, deviation)
        report.passed = report.passed and deviation <= tolerance and phase <= tolerance
    logger.info(f"{report.name}: {'pass' if report.passed else 'FAIL'} (max |dR| {report.max_error:.1e})")
    return report

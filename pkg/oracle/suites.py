"""
Verification suites behind `verify --suite`. Each suite runs its cross-checks against an
independent reference (mpmath, the grid oracle, ODE scattering or a stated value) and
returns VerificationReports; nothing here raises on a failed check.
"""
from typing import Callable, Dict, List

import mpmath
import numpy as np

from config import PotentialSpec, WellKind
from errors import ExpwellError, MissedRootError
from exact.spectrum import RootKind, audit_level_count, critical_a, order_zeros, spectrum
from log import get_logger
from oracle.grid import fpwef_problem, grid_diagonalize
from oracle.ode import ode_scatter
from oracle.report import VerificationReport
from scatter.reflection import (ScatteringPoint, max_wavelength_gradient, numeric_max_wavelength_gradient,
                                reflection, scattering_extent)
from semiclassical.quantize import Scheme, error_table, wkb_spectrum
from specfun.bessel import bessel_j, bessel_j_dx
from specfun.gamma import erfc, log_gamma
from susy.hierarchy import hierarchy
from susy.verify import verify_partner_spectrum, verify_scattering_invariance
from variational.ansatz import FamilyId, ansatz_threshold, exact_reference, minimize

logger = get_logger("verify")

mpmath.mp.dps = 30


def _compare(name: str, rows: List[dict], tolerance: float, key: str = "error") -> VerificationReport:
    worst = max((row[key] for row in rows), default=0.0)
    return VerificationReport(name=name, passed=bool(worst <= tolerance), max_error=float(worst), rows=rows)


def _claim(name: str, passed: bool, message: str, **row) -> VerificationReport:
    return VerificationReport(name=name, passed=bool(passed), rows=[row] if row else [], messages=[message])


def specfun_suite() -> List[VerificationReport]:
    rows = []
    for order, x in [(0.0, 2.405), (2.3, 7.1), (7.5, 32.0), (1j * 0.7, 5.0), (1j * 1.5, 20.0), (1j * 0.2, 3.0)]:
        reference = complex(mpmath.besselj(order, x))
        value = complex(bessel_j(order, x))
        rows.append({"order": str(order), "x": x, "error": abs(value - reference) / max(abs(reference), 1e-3)})
    values = _compare("J_nu against mpmath", rows, 1e-9)

    rows = []
    for order, x in [(1.7, 5.0), (1j * 0.7, 8.0), (1j * 0.7, 14.0)]:
        reference = complex(mpmath.diff(lambda t: mpmath.besselj(order, t), x))
        rows.append({"order": str(order), "x": x, "error": abs(complex(bessel_j_dx(order, x)) - reference)})
    slopes = _compare("dJ_nu/dx against mpmath", rows, 1e-8)

    rows = [{"z": str(z), "error": abs(log_gamma(z) - complex(mpmath.loggamma(z)))} for z in (0.5, 1 + 2j, 10.3 - 4j)]
    gamma = _compare("log Gamma against mpmath", rows, 1e-10)

    rows = [{"x": x, "error": abs(erfc(x) - float(mpmath.erfc(x))) / float(mpmath.erfc(x))} for x in (0.0, 1.5, 5.0)]
    tail = _compare("erfc against mpmath", rows, 1e-12)

    rows = []
    for beta in (0.3, 1.0, 2.5):
        for x in (1.0, 6.0, 15.0):
            rows.append({"beta": beta, "x": x,
                         "error": abs(bessel_j(-1j * beta, x) - np.conj(bessel_j(1j * beta, x)))})
    conjugation = _compare("imaginary-order conjugation", rows, 1e-10)

    rows = []
    for nu in (0.3, 2.7):
        for x in (1.5, 9.0):
            wronskian = bessel_j(nu, x) * bessel_j_dx(-nu, x) - bessel_j(-nu, x) * bessel_j_dx(nu, x)
            rows.append({"nu": nu, "x": x, "error": abs(wronskian + 2.0 * np.sin(nu * np.pi) / (np.pi * x))})
    wronskian = _compare("Wronskian of J_nu, J_-nu", rows, 1e-8)
    return [values, slopes, gamma, tail, conjugation, wronskian]


COUNTS = [(WellKind.II, 8.48, 5), (WellKind.I, 8.48, 2), (WellKind.I, 32.0, 10),
          (WellKind.I, 2.40, 0), (WellKind.I, 2.41, 1)]


def exact_suite() -> List[VerificationReport]:
    rows = []
    for kind, a, expected in COUNTS:
        found = len(spectrum(PotentialSpec(kind=kind, a=a)))
        rows.append({"well": kind.value, "a": a, "expected": expected, "found": found,
                     "error": float(found != expected)})
    counts = _compare("bound-state counts", rows, 0.0)
    counts.messages.append(f"a_c = {critical_a():.12f}")

    rows = []
    for kind, a in ((WellKind.II, 2.0), (WellKind.II, 8.48), (WellKind.I, 11.75)):
        spec = PotentialSpec(kind=kind, a=a)
        try:
            found, message = audit_level_count(spec), ""
        except MissedRootError as e:
            found, message = None, str(e)
        rows.append({"well": kind.value, "a": a, "levels": len(spectrum(spec)), "oracle_count": found,
                     "message": message, "error": 0.0 if found is not None else 1.0})
    audit = _compare("Bessel-root count against the grid oracle", rows, 0.0)

    rows = []
    for a in (4.5, 8.48, 11.75, 32.0):
        spec = PotentialSpec(kind=WellKind.II, a=a)
        bound = spectrum(spec)
        result = grid_diagonalize(fpwef_problem(spec, float(bound.roots.min())), len(bound) + 1)
        oracle = result.eigenvalues[:len(bound)] / spec.u0
        error = float(np.max(np.abs(oracle - bound.energies) / np.abs(bound.energies)))
        rows.append({"a": a, "levels": len(bound), "oracle_count": result.bound_count, "error": error})
    equivalence = _compare("exact energies against the grid oracle", rows, 1e-6)
    equivalence.passed = equivalence.passed and all(row["oracle_count"] == row["levels"] for row in rows)

    rng = np.random.default_rng(7)
    rows = []
    for a in rng.uniform(3.0, 40.0, 20):
        odd = order_zeros(a, RootKind.VALUE)
        even = order_zeros(a, RootKind.DERIVATIVE)
        merged = sorted([(b, "even") for b in even] + [(b, "odd") for b in odd], reverse=True)
        alternates = all(p != q for (_, p), (_, q) in zip(merged, merged[1:])) and (not merged or merged[0][1] == "even")
        rows.append({"a": float(a), "error": 0.0 if alternates else 1.0})
    interlacing = _compare("interlacing of even and odd roots", rows, 0.0)
    return [counts, audit, equivalence, interlacing]


def scatter_suite() -> List[VerificationReport]:
    rng = np.random.default_rng(11)
    rows = []
    for a, beta in zip(rng.uniform(1.0, 10.0, 10), rng.uniform(0.1, 4.0, 10)):
        u0 = 0.25 * a * a
        extent = scattering_extent(a)
        amplitudes = ode_scatter(lambda x, u0=u0: -u0 * np.exp(-np.abs(x)), 0.5 * beta, (-extent, extent),
                                 kinks=(0.0,))
        closed = reflection(ScatteringPoint(a, beta)).R
        rows.append({"a": float(a), "beta": float(beta), "R": closed, "unitarity": amplitudes.unitarity_defect,
                     "error": abs(abs(amplitudes.r) ** 2 - closed)})
    closed_form = _compare("closed-form R against ODE scattering", rows, 1e-6)
    closed_form.passed = closed_form.passed and all(row["unitarity"] <= 1e-8 for row in rows)

    slow = reflection(ScatteringPoint(3.0, 0.01)).R
    quantum = _claim("quantum reflection at low energy", slow >= 0.95, f"R(a=3, beta=0.01) = {slow:.6f}", R=slow)

    rows = []
    for beta in (0.2, 1.0, 5.0):
        closed = max_wavelength_gradient(beta)
        rows.append({"beta": beta, "error": abs(numeric_max_wavelength_gradient(beta) - closed) / closed})
    gradient = _compare("maximum de Broglie wavelength gradient", rows, 1e-3)
    return [closed_form, quantum, gradient]


def _double_well(a: float) -> VerificationReport:
    level = hierarchy(PotentialSpec(kind=WellKind.II, a=a), 1)[0]
    half = np.linspace(0.0, 12.0, 2401)
    x = np.concatenate([-half[:0:-1], half])
    v = level.V_plus(x)
    minima = x[1:-1][(v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])]
    symmetric = len(minima) == 2 and abs(minima[0] + minima[1]) < 1e-9
    return _claim(f"double-well partner (a={a:g})", symmetric, f"local minima at {np.round(minima, 4).tolist()}",
                  minima=minima.tolist())


def susy_suite() -> List[VerificationReport]:
    reports = [verify_partner_spectrum(level) for level in hierarchy(PotentialSpec(kind=WellKind.I, a=11.75), 2)]
    reports.append(verify_partner_spectrum(hierarchy(PotentialSpec(kind=WellKind.II, a=4.5), 1)[0]))
    reports.append(_double_well(4.5))
    reports.append(verify_scattering_invariance(4.5, (0.2, 0.5, 1.0, 2.0)))
    return reports


def variational_suite() -> List[VerificationReport]:
    a = 5.0
    reference = exact_reference(FamilyId.GAUSSIAN_II, a)
    result = minimize(FamilyId.GAUSSIAN_II, a, reference)
    ground = _claim("Gaussian ground state of U_II at a=5",
                    abs(result.energy + 0.545) <= 0.005 and result.relative_error <= 0.015,
                    f"E/U0 = {result.energy:.6f}, exact {reference:.6f}", energy=result.energy,
                    relative_error=result.relative_error)

    threshold = ansatz_threshold(FamilyId.EXPONENTIAL_X_I)
    onset = _claim("exponential-family threshold", abs(threshold - 2.5142) <= 1e-3, f"a_c = {threshold:.6f}",
                   threshold=threshold)

    rows = []
    for fid in FamilyId:
        for a in (3.0, 5.0, 8.48, 11.75, 20.0):
            reference = exact_reference(fid, a)
            trial = minimize(fid, a, reference)
            if reference is None or not trial.exists:
                continue
            rows.append({"family": fid.value, "a": a, "energy": trial.energy, "exact": reference,
                         "error": max(reference - trial.energy, 0.0)})
    upper = _compare("variational upper bound", rows, 1e-12)
    return [ground, onset, upper]


def semiclassical_suite() -> List[VerificationReport]:
    spec = PotentialSpec(kind=WellKind.I, a=32.0)
    table = error_table(spec)
    wkb = np.array([row[Scheme.WKB.value] for row in table.rows])
    jwkb = np.array([row[Scheme.JWKB.value] for row in table.rows])
    swkb = np.array([row[Scheme.SWKB.value] for row in table.rows])
    swkb0 = swkb[0]
    top = len(table.rows) - 1
    low = [table.best(n) for n in range(3)]
    reports = [
        _claim("ten levels per scheme at a=32",
               len(table.rows) == 10 and all(np.all(np.isfinite(c)) for c in (wkb, jwkb, swkb)),
               f"{len(table.rows)} exact levels"),
        _claim("WKB error smallest at n=4", int(np.argmin(wkb)) == 4, f"minimum at n = {int(np.argmin(wkb))}"),
        _claim("JWKB never worse than WKB", bool(np.all(jwkb <= wkb)), f"max JWKB/WKB = {np.max(jwkb / wkb):.3f}"),
        _claim("JWKB best at the highest level", table.best(top) == Scheme.JWKB, f"best scheme {table.best(top)}"),
        _claim("SWKB best for n <= 2", all(s == Scheme.SWKB for s in low),
               f"best schemes {[s.value if s else None for s in low]}"),
        _claim("SWKB exact for the ground state", swkb0 <= 1e-8, f"relative error {swkb0:.1e}"),
    ]

    rows = []
    for a in (8.48, 20.0, 32.0):
        half = wkb_spectrum(PotentialSpec(kind=WellKind.I, a=a)).energies
        full = wkb_spectrum(PotentialSpec(kind=WellKind.II, a=a)).energies
        odd = full[1::2][:len(half)]
        rows.append({"a": a, "error": float(np.max(np.abs(odd - half[:len(odd)])))})
    reports.append(_compare("WKB odd levels of U_II equal U_I levels", rows, 1e-12))
    return reports


SUITES: Dict[str, Callable[[], List[VerificationReport]]] = {
    "specfun": specfun_suite,
    "exact": exact_suite,
    "scatter": scatter_suite,
    "susy": susy_suite,
    "variational": variational_suite,
    "semiclassical": semiclassical_suite,
}


def run_suite(name: str) -> List[VerificationReport]:
    """Run one suite, or every suite for name == "all"."""
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite in names:
        if suite not in SUITES:
            raise ExpwellError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
        try:
            found = SUITES[suite]()
        except ExpwellError as e:
            logger.error(f"{suite}: {e}")
            found = [VerificationReport(name=suite, passed=False, messages=[str(e)])]
        for report in found:
            logger.info(f"{suite}: {report.name}: {'pass' if report.passed else 'FAIL'}")
        reports.extend(found)
    return reports


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Run verification suites.")
    parser.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    args = parser.parse_args()
    failed = [r.name for r in run_suite(args.suite) if not r.passed]
    print("all passed" if not failed else f"failed: {failed}")

"""
expwell command line: spectra, scattering, SUSY partners, variational and semiclassical
estimates, figure datasets and verification suites for the exponential wells.

Energies are printed in units of U0 unless --u0/--alpha/--mass/--hbar are given, in which case
they are converted at this boundary only.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from config import PotentialSpec, Units, WellKind
from datasets.figures import FIGURES, emit_figure
from datasets.output import RunManifest, to_json, write_csv, write_manifest
from errors import ExpwellError, VerificationFailure
from exact.spectrum import spectrum
from log import get_logger, setup_logging
from oracle.suites import SUITES, run_suite
from scatter.reflection import ScatteringPoint, reflection, reflection_map
from semiclassical.quantize import JwkbForm, Scheme, error_table
from susy.hierarchy import hierarchy
from variational.ansatz import FamilyId, exact_reference, family, minimize

logger = get_logger("main")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFICATION = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _units(args) -> Optional[Units]:
    if all(value is None for value in (args.u0, args.alpha, args.mass, args.hbar)):
        return None
    return Units(u0=args.u0 or 1.0, alpha=args.alpha or 1.0, mass=args.mass or 1.0, hbar=args.hbar or 1.0)


def _spec(args, kind) -> PotentialSpec:
    units = _units(args)
    a = args.a
    if a is None:
        if units is None:
            raise ExpwellError("give --a or the physical parameters --u0/--alpha/--mass/--hbar")
        a = units.depth_parameter()
    return PotentialSpec(kind=kind, a=a, units=units)


def _energy(spec: PotentialSpec, e_over_u0: float) -> float:
    return spec.units.energy(e_over_u0) if spec.units is not None else e_over_u0


def run_spectrum(args) -> int:
    spec = _spec(args, args.well)
    bound = spectrum(spec)
    levels = [{"n": level.index, "root": level.root, "parity": level.parity.value,
               "energy": _energy(spec, level.energy)} for level in bound.levels]
    if args.json:
        print(to_json({"well": spec.kind.value, "a": spec.a, "levels": levels}))
        return EXIT_OK
    print(f"well {spec.kind.value}, a={spec.a:.10g}: {len(levels)} bound state(s)")
    for level in levels:
        print(f"{level['n']:3d}  {level['parity']:5s}  b={level['root']:.12f}  E={level['energy']:.12f}")
    return EXIT_OK


def run_scatter(args) -> int:
    if args.mode == "map":
        if not args.out:
            raise ExpwellError("scatter map needs --out")
        grid = reflection_map((args.a_min, args.a_max, args.a_steps),
                              (args.beta_min, args.beta_max, args.beta_steps))
        out = write_csv(args.out, ["a", "beta", "R"], grid.triplets())
        parameters = {key: getattr(args, key) for key in ("a_min", "a_max", "a_steps", "beta_min", "beta_max",
                                                          "beta_steps")}
        manifest = RunManifest(command=" ".join(args.argv), parameters=parameters, output_files=[out])
        write_manifest(Path(out).parent, manifest, Path(out).stem + "_manifest.json")
        return EXIT_OK
    if args.beta is None:
        raise ExpwellError("scatter needs --beta")
    spec = _spec(args, WellKind.II)
    result = reflection(ScatteringPoint(spec.a, args.beta))
    print(f"a={spec.a:.10g} beta={args.beta:.10g} E={_energy(spec, (args.beta / spec.a) ** 2):.12g}")
    print(f"R={result.R:.15f} T={result.T:.15f}")
    return EXIT_OK


def run_susy(args) -> int:
    spec = _spec(args, args.well)
    levels = hierarchy(spec, args.depth)
    for level in levels:
        expected = ", ".join(f"{_energy(spec, e / spec.u0):.10f}" for e in level.expected_spectrum)
        print(f"k={level.depth} shift={_energy(spec, level.shift / spec.u0):.10f} spectrum=[{expected}]")
    if args.emit_potentials:
        if spec.kind == WellKind.I:
            x = np.linspace(0.05, 12.0, 480)
        else:
            x = np.linspace(-10.0, 10.0, 401)
        columns = [x] + [level.shifted_potential(x) / spec.u0 for level in levels]
        write_csv(args.emit_potentials, ["x"] + [f"V_plus_{level.depth}_shifted" for level in levels],
                  zip(*columns))
    return EXIT_OK


def run_variational(args) -> int:
    fid = FamilyId(args.family)
    target = family(fid)
    spec = _spec(args, target.well)
    reference = exact_reference(fid, spec.a)
    result = minimize(fid, spec.a, reference)
    if not result.exists:
        print(f"{fid.value}: no stationary minimum at a={spec.a:.10g}")
        return EXIT_OK
    line = f"{fid.value}: a={spec.a:.10g} eta0={result.eta0:.10f} E={_energy(spec, result.energy):.10f}"
    if reference is not None:
        line += f" exact={_energy(spec, reference):.10f} rel_err={result.relative_error:.3e}"
    print(line if result.bound else line + " (not bound)")
    return EXIT_OK


def run_semiclassical(args) -> int:
    spec = _spec(args, args.well)
    schemes = [Scheme(name.strip()) for name in args.schemes.split(",") if name.strip()]
    table = error_table(spec, schemes, JwkbForm(args.jwkb_form))
    header = ["n", "exact"] + [s.value for s in schemes] + [f"delta_{s.value}" for s in schemes]
    print("  ".join(header))
    for row in table.rows:
        cells = [str(row["n"]), f"{_energy(spec, row['exact']):.10f}"]
        cells += [f"{_energy(spec, row[f'E_{s.value}']):.10f}" for s in schemes]
        cells += [f"{row[s.value]:.3e}" for s in schemes]
        print("  ".join(cells))
    return EXIT_OK


def run_figure(args) -> int:
    manifest = emit_figure(args.id, args.out, command=" ".join(args.argv))
    for path in manifest.output_files:
        print(path)
    return EXIT_OK


def run_verify(args) -> int:
    reports = run_suite(args.suite)
    failed = [report for report in reports if not report.passed]
    if args.json:
        print(json.dumps([report.as_dict() for report in reports], indent=2, default=float))
    for report in reports:
        print(f"{'PASS' if report.passed else 'FAIL'}  {report.name}  max_error={report.max_error:.2e}")
    if failed:
        raise VerificationFailure(f"{len(failed)} of {len(reports)} checks failed")
    return EXIT_OK


def _add_units(parser: argparse.ArgumentParser, well: bool = True) -> None:
    if well:
        parser.add_argument("--well", choices=[k.value for k in WellKind], default="I", help="U_I (half line) or U_II")
    parser.add_argument("--a", type=float, default=None, help="Dimensionless depth parameter")
    parser.add_argument("--u0", type=float, default=None, help="Well depth U0 (physical units)")
    parser.add_argument("--alpha", type=float, default=None, help="Inverse range alpha (physical units)")
    parser.add_argument("--mass", type=float, default=None, help="Particle mass (physical units)")
    parser.add_argument("--hbar", type=float, default=None, help="Planck constant (physical units)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expwell", description="Exponential potential wells: exact and approximate spectra.")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = commands.add_parser("spectrum", help="Exact bound spectrum")
    _add_units(p)
    p.add_argument("--json", action="store_true", help="Print JSON instead of a table")
    p.set_defaults(handler=run_spectrum)

    p = commands.add_parser("scatter", help="Reflection probability of U_II")
    p.add_argument("mode", nargs="?", choices=["point", "map"], default="point")
    _add_units(p, well=False)
    p.add_argument("--beta", type=float, default=None, help="Dimensionless wave number, E/U0 = (beta/a)^2")
    p.add_argument("--a-min", dest="a_min", type=float, default=0.1)
    p.add_argument("--a-max", dest="a_max", type=float, default=10.0)
    p.add_argument("--a-steps", dest="a_steps", type=int, default=100)
    p.add_argument("--beta-min", dest="beta_min", type=float, default=0.05)
    p.add_argument("--beta-max", dest="beta_max", type=float, default=5.0)
    p.add_argument("--beta-steps", dest="beta_steps", type=int, default=100)
    p.add_argument("--out", default=None, help="CSV file for the (a, beta, R) map")
    p.set_defaults(handler=run_scatter)

    p = commands.add_parser("susy", help="Supersymmetric partner hierarchy")
    _add_units(p)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--emit-potentials", dest="emit_potentials", default=None, help="CSV file for the partner curves")
    p.set_defaults(handler=run_susy)

    p = commands.add_parser("variational", help="Variational estimate")
    p.add_argument("--family", choices=[f.value for f in FamilyId], required=True)
    _add_units(p, well=False)
    p.set_defaults(handler=run_variational)

    p = commands.add_parser("semiclassical", help="WKB, JWKB and SWKB spectra")
    _add_units(p)
    p.add_argument("--schemes", default="wkb,jwkb,swkb", help="Comma-separated schemes")
    p.add_argument("--jwkb-form", dest="jwkb_form", choices=[f.value for f in JwkbForm], default=JwkbForm.SCALED.value,
                   help="JWKB route: scaled (default), integral, or a printed form")
    p.set_defaults(handler=run_semiclassical)

    p = commands.add_parser("figure", help="Write one figure dataset")
    p.add_argument("--id", choices=list(FIGURES), required=True)
    p.add_argument("--out", default="data", help="Output directory")
    p.set_defaults(handler=run_figure)

    p = commands.add_parser("verify", help="Run verification suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--json", action="store_true", help="Print the reports as JSON")
    p.set_defaults(handler=run_verify)
    return parser


def dispatch(argv: Sequence[str]) -> int:
    """
    Parse argv and run one subcommand.

    Returns:
        int: 0 success, 1 domain error, 2 verification failure, 64 usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    args.argv = ["expwell", *argv]
    setup_logging(args.verbose)
    try:
        return args.handler(args)
    except VerificationFailure as e:
        logger.error(str(e))
        return EXIT_VERIFICATION
    except (ExpwellError, ValidationError) as e:
        logger.error(f"Error: {e}")
        return EXIT_DOMAIN
    except Exception as e:
        logger.error(f"Error: {str(e)}")
        raise


def main(argv: Optional[List[str]] = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

"""
Plot-ready datasets for the six figure panels. Every emitter returns the files it wrote;
emit_figure adds the RunManifest.
"""
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from config import PotentialSpec, WellKind
from datasets.output import RunManifest, write_csv, write_json, write_manifest
from errors import ExpwellError
from exact.spectrum import potential, spectrum, wavefunction
from log import get_logger
from scatter.reflection import reflection_map
from semiclassical.quantize import Scheme, error_table
from susy.hierarchy import hierarchy
from variational.ansatz import FamilyId, ansatz_threshold, crossing, exact_reference, minimize

logger = get_logger("datasets")

FIGURE_PARAMETERS: Dict[str, dict] = {
    "1": {"well": "II", "a": 8.48, "x_max": 12.0, "samples": 481},
    "2": {"a_range": (0.1, 10.0, 100), "beta_range": (0.05, 5.0, 100)},
    "3a": {"well": "I", "a": 11.75, "depth": 2, "x_min": 0.05, "x_max": 12.0, "samples": 480},
    "3b": {"well": "II", "a": 4.5, "depth": 1, "x_max": 10.0, "samples": 401},
    "4": {"a_min": 2.45, "a_max": 32.0, "samples": 60},
    "5": {"well": "I", "a": 32.0},
}


def figure_1(out_dir: Path, params: dict) -> List[str]:
    """U_II with its bound levels and wavefunctions."""
    spec = PotentialSpec(kind=params["well"], a=params["a"])
    bound = spectrum(spec)
    x = np.linspace(-params["x_max"], params["x_max"], params["samples"])
    columns = [x, potential(spec, x)] + [wavefunction(level, spec, x) for level in bound.levels]
    header = ["x", "U"] + [f"psi_{level.index}" for level in bound.levels]
    curves = write_csv(out_dir / "fig1_wavefunctions.csv", header, zip(*columns))
    levels = write_csv(out_dir / "fig1_levels.csv", ["n", "parity", "root", "energy"],
                       [(level.index, level.parity.value, level.root, level.energy) for level in bound.levels])
    return [curves, levels]


def figure_2(out_dir: Path, params: dict) -> List[str]:
    """Reflection probability of U_II over (a, beta)."""
    grid = reflection_map(params["a_range"], params["beta_range"])
    return [write_csv(out_dir / "fig2_reflection.csv", ["a", "beta", "R"], grid.triplets())]


def _partner_curves(params: dict, name: str, x: np.ndarray) -> List[str]:
    spec = PotentialSpec(kind=params["well"], a=params["a"])
    u0 = spec.u0
    levels = hierarchy(spec, params["depth"])
    columns = [x, potential(spec, x)] + [level.shifted_potential(x) / u0 for level in levels]
    header = ["x", "U"] + [f"V_plus_{level.depth}_shifted" for level in levels]
    curves = write_csv(Path(params["out_dir"]) / f"{name}_potentials.csv", header, zip(*columns))
    rows = [(k, n, e / u0) for k, level in enumerate(levels, start=1) for n, e in enumerate(level.expected_spectrum)]
    energies = write_csv(Path(params["out_dir"]) / f"{name}_levels.csv", ["depth", "n", "energy"], rows)
    return [curves, energies]


def figure_3a(out_dir: Path, params: dict) -> List[str]:
    """U_I and its first two shifted partners."""
    x = np.linspace(params["x_min"], params["x_max"], params["samples"])
    return _partner_curves({**params, "out_dir": out_dir}, "fig3a", x)


def figure_3b(out_dir: Path, params: dict) -> List[str]:
    """U_II and its double-well partner."""
    x = np.linspace(-params["x_max"], params["x_max"], params["samples"])
    return _partner_curves({**params, "out_dir": out_dir}, "fig3b", x)


def figure_4(out_dir: Path, params: dict) -> List[str]:
    """Ground-state error of the two half-line trial families against a."""
    a_grid = np.linspace(params["a_min"], params["a_max"], params["samples"])
    rows = []
    for a in tqdm(a_grid, desc="variational error curves"):
        reference = exact_reference(FamilyId.GAUSSIAN_X_I, a)
        row = [a, reference]
        for fid in (FamilyId.GAUSSIAN_X_I, FamilyId.EXPONENTIAL_X_I):
            result = minimize(fid, a, reference)
            usable = result.exists and reference is not None
            row += [result.energy if result.exists else None, result.relative_error if usable else None]
        rows.append(row)
    curve = write_csv(out_dir / "fig4_errors.csv",
                      ["a", "exact", "E_gauss", "delta_gauss", "E_exp", "delta_exp"], rows)
    summary = {
        "threshold_gauss": ansatz_threshold(FamilyId.GAUSSIAN_X_I),
        "threshold_exp": ansatz_threshold(FamilyId.EXPONENTIAL_X_I),
        "crossing": crossing(a_grid),
    }
    return [curve, write_json(out_dir / "fig4_summary.json", summary)]


def figure_5(out_dir: Path, params: dict) -> List[str]:
    """Relative error of WKB, JWKB and SWKB for every bound level."""
    spec = PotentialSpec(kind=params["well"], a=params["a"])
    schemes = tuple(Scheme) if spec.kind == WellKind.I else (Scheme.WKB, Scheme.SWKB)
    table = error_table(spec, schemes)
    names = [s.value for s in schemes]
    header = ["n", "exact"] + names + [f"delta_{name}" for name in names]
    rows = [[row["n"], row["exact"]] + [row[f"E_{name}"] for name in names] + [row[name] for name in names]
            for row in table.rows]
    return [write_csv(out_dir / "fig5_semiclassical.csv", header, rows)]


FIGURES: Dict[str, Callable[[Path, dict], List[str]]] = {
    "1": figure_1,
    "2": figure_2,
    "3a": figure_3a,
    "3b": figure_3b,
    "4": figure_4,
    "5": figure_5,
}


def emit_figure(figure_id: str, out_dir, command: str = "", overrides: Optional[dict] = None) -> RunManifest:
    """
    Write the dataset of one figure plus its manifest.

    Args:
        figure_id (str): one of FIGURES
        out_dir: output directory (created when missing)
        command (str): command line recorded in the manifest
        overrides (Optional[dict]): parameter overrides, e.g. a smaller grid

    Returns:
        RunManifest: the manifest that was written
    """
    if figure_id not in FIGURES:
        raise ExpwellError(f"unknown figure id {figure_id!r}; choose from {', '.join(FIGURES)}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    params = {**FIGURE_PARAMETERS[figure_id], **(overrides or {})}
    try:
        files = FIGURES[figure_id](out_dir, params)
    except Exception as e:
        logger.error(f"figure {figure_id}: {e}")
        raise
    manifest = RunManifest(command=command or f"figure --id {figure_id}", parameters=params, output_files=files)
    write_manifest(out_dir, manifest, f"fig{figure_id}_manifest.json")
    return manifest


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Emit one figure dataset.")
    parser.add_argument("--id", choices=list(FIGURES), default="1")
    parser.add_argument("--out", default="data")
    args = parser.parse_args()
    print(emit_figure(args.id, args.out).output_files)

"""
Grid oracle: finite-difference diagonalization of -d^2/dx^2 + V(x) (hbar = 1, 2m = 1)
on a uniform grid with Dirichlet ends, Richardson-extrapolated from steps h and h/2.

Two stencils:
    three_point  symmetric tridiagonal, O(h^2), eigenpairs from eigh_tridiagonal
    five_point   symmetric pentadiagonal, O(h^4), eigenvalues from eig_banded and
                 eigenvectors by inverse iteration on the banded system

three_point is the default. U_II has a kink at x = 0, which puts an h^2 term into the
error of either stencil; with the kink on a node the three-point error stays a series
in h^2, so one Richardson step still removes the leading term.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional

import numpy as np
from scipy.linalg import LinAlgError, eig_banded, eigh_tridiagonal, solve_banded

from config import PotentialSpec, Settings, WellKind
from errors import DomainError, OracleConvergenceError
from log import get_logger

logger = get_logger("oracle")


class Boundary(str, Enum):
    DIRICHLET_BOTH = "dirichlet_both"
    DIRICHLET_LEFT_DECAY_RIGHT = "dirichlet_left_decay_right"
    DECAY_BOTH = "decay_both"


class Stencil(str, Enum):
    THREE_POINT = "three_point"
    FIVE_POINT = "five_point"


ORDER = {Stencil.THREE_POINT: 2, Stencil.FIVE_POINT: 4}


@dataclass(frozen=True)
class GridProblem:
    potential: Callable[[np.ndarray], np.ndarray]
    x_lo: float
    x_hi: float
    points: int = 4096
    boundary: Boundary = Boundary.DECAY_BOTH

    def __post_init__(self):
        if self.points < 64:
            raise DomainError("grid needs at least 64 points")
        if not self.x_hi > self.x_lo:
            raise DomainError("empty grid domain")

    @property
    def step(self) -> float:
        return (self.x_hi - self.x_lo) / (self.points - 1)

    def refined(self, factor: int = 2) -> "GridProblem":
        return GridProblem(self.potential, self.x_lo, self.x_hi,
                           factor * (self.points - 1) + 1, self.boundary)


@dataclass
class OracleSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    grid: np.ndarray
    convergence: np.ndarray
    warnings: List[str] = field(default_factory=list)

    @property
    def bound_count(self) -> int:
        return int(np.sum(self.eigenvalues < 0))


def _interior(problem: GridProblem):
    x = np.linspace(problem.x_lo, problem.x_hi, problem.points)
    v = np.asarray(problem.potential(x[1:-1]), dtype=float)
    if not np.all(np.isfinite(v)):
        raise DomainError("potential is not finite at every interior node")
    return x, v


def _band(problem: GridProblem, stencil: Stencil) -> np.ndarray:
    """Lower banded storage (row k holds the k-th subdiagonal)."""
    x, v = _interior(problem)
    h2 = problem.step ** 2
    n = len(v)
    if stencil == Stencil.THREE_POINT:
        band = np.zeros((2, n))
        band[0] = 2.0 / h2 + v
        band[1, :-1] = -1.0 / h2
        return band
    band = np.zeros((3, n))
    band[0] = 30.0 / (12.0 * h2) + v
    # ghost node beyond each wall reflected oddly: psi_{-1} = -psi_1
    band[0, 0] -= 1.0 / (12.0 * h2)
    band[0, -1] -= 1.0 / (12.0 * h2)
    band[1, :-1] = -16.0 / (12.0 * h2)
    band[2, :-2] = 1.0 / (12.0 * h2)
    return band


def _shifted_full_band(band: np.ndarray, shift: float) -> np.ndarray:
    """Convert symmetric lower storage to solve_banded's (l, u) layout, minus shift on the diagonal."""
    kd = band.shape[0] - 1
    n = band.shape[1]
    ab = np.zeros((2 * kd + 1, n))
    ab[kd] = band[0] - shift
    for k in range(1, kd + 1):
        ab[kd + k, :n - k] = band[k, :n - k]
        ab[kd - k, k:] = band[k, :n - k]
    return ab


def _inverse_iteration(band: np.ndarray, eigenvalues: np.ndarray, iterations: int = 3) -> np.ndarray:
    kd = band.shape[0] - 1
    n = band.shape[1]
    rng = np.random.default_rng(0)
    vectors = np.empty((n, len(eigenvalues)))
    for j, value in enumerate(eigenvalues):
        shift = value + 1e-10 * max(1.0, abs(value))
        ab = _shifted_full_band(band, shift)
        vec = rng.standard_normal(n)
        for _ in range(iterations):
            vec = solve_banded((kd, kd), ab, vec)
            vec /= np.linalg.norm(vec)
        vectors[:, j] = vec
    return vectors


def _solve(problem: GridProblem, count: int, stencil: Stencil, vectors: bool):
    band = _band(problem, stencil)
    try:
        if stencil == Stencil.THREE_POINT:
            result = eigh_tridiagonal(band[0], band[1, :-1], eigvals_only=not vectors,
                                      select="i", select_range=(0, count - 1))
            return result if vectors else (result, None)
        values = eig_banded(band, lower=True, eigvals_only=True, select="i",
                            select_range=(0, count - 1))
    except LinAlgError as e:
        raise OracleConvergenceError(f"eigen-solver failed: {e}") from e
    return values, (_inverse_iteration(band, values) if vectors else None)


def _normalize(vectors: np.ndarray, h: float) -> np.ndarray:
    full = np.zeros((vectors.shape[0] + 2, vectors.shape[1]))
    full[1:-1] = vectors
    full /= np.sqrt(h * np.sum(full ** 2, axis=0))
    for j in range(full.shape[1]):
        column = full[:, j]
        first = np.argmax(np.abs(column) > 1e-3 * np.max(np.abs(column)))
        if column[first] < 0:
            full[:, j] = -column
    return full


def _edge_mass(problem: GridProblem, vector: np.ndarray) -> float:
    width = max(1, int(0.05 * len(vector)))
    weight = vector ** 2
    mass = 0.0
    if problem.boundary in (Boundary.DECAY_BOTH, Boundary.DIRICHLET_LEFT_DECAY_RIGHT):
        mass += weight[-width:].sum()
    if problem.boundary == Boundary.DECAY_BOTH:
        mass += weight[:width].sum()
    return mass / weight.sum()


def grid_diagonalize(problem: GridProblem, count: int, stencil: Stencil = Stencil.THREE_POINT,
                     extrapolate: bool = True) -> OracleSpectrum:
    """
    Lowest `count` eigenpairs of the discretized Hamiltonian.

    Args:
        problem (GridProblem): potential, domain and resolution
        count (int): number of eigenpairs, at most points/4
        stencil (Stencil): finite-difference stencil
        extrapolate (bool): Richardson-combine the h and h/2 grids

    Returns:
        OracleSpectrum: eigenvalues (extrapolated when requested), eigenvectors on the
        finest grid, and a per-eigenvalue error estimate
    """
    stencil = Stencil(stencil)
    if count < 1 or count > problem.points // 4:
        raise DomainError(f"count={count} must lie in [1, points/4]")
    coarse, coarse_vectors = _solve(problem, count, stencil, vectors=not extrapolate)
    if extrapolate:
        fine_problem = problem.refined()
        fine, fine_vectors = _solve(fine_problem, count, stencil, vectors=True)
        factor = 2.0 ** ORDER[stencil] - 1.0
        values = fine + (fine - coarse) / factor
        error = np.abs(fine - coarse) / factor
    else:
        fine_problem, fine_vectors, values = problem, coarse_vectors, coarse
        error = np.full(count, np.nan)
    vectors = _normalize(fine_vectors, fine_problem.step)
    grid = np.linspace(fine_problem.x_lo, fine_problem.x_hi, fine_problem.points)

    warnings = []
    mass = _edge_mass(problem, vectors[:, 0])
    if mass > 1e-8:
        message = f"domain too small: lowest eigenvector keeps {mass:.1e} of its mass in the outer 5%"
        logger.warning(message)
        warnings.append(message)
    return OracleSpectrum(eigenvalues=values, eigenvectors=vectors, grid=grid,
                          convergence=error, warnings=warnings)


@dataclass
class ConvergenceReport:
    steps: np.ndarray
    eigenvalues: np.ndarray  # (refinements, count)
    observed_order: np.ndarray
    extrapolated: np.ndarray


def convergence_study(problem: GridProblem, count: int, levels: int = 3,
                      stencil: Stencil = Stencil.THREE_POINT) -> ConvergenceReport:
    """Eigenvalues over successive step halvings and the observed convergence order."""
    stencil = Stencil(stencil)
    if levels < 2:
        raise DomainError("convergence study needs at least two grids")
    steps, rows = [], []
    current = problem
    for _ in range(levels):
        values, _ = _solve(current, count, stencil, vectors=False)
        steps.append(current.step)
        rows.append(values)
        current = current.refined()
    table = np.array(rows)
    with np.errstate(divide="ignore", invalid="ignore"):
        if levels >= 3:
            ratio = (table[-3] - table[-2]) / (table[-2] - table[-1])
            observed = np.log2(np.abs(ratio))
        else:
            observed = np.full(count, np.nan)
    extrapolated = table[-1] + (table[-1] - table[-2]) / (2.0 ** ORDER[stencil] - 1.0)
    logger.debug(f"observed orders {np.round(observed, 2)}")
    return ConvergenceReport(steps=np.array(steps), eigenvalues=table,
                             observed_order=observed, extrapolated=extrapolated)


def default_extent(a: float, smallest_root: Optional[float]) -> float:
    """X_max = max(30, 2 ln a + 40 / b_min)."""
    if not smallest_root:
        return 30.0
    return max(30.0, 2.0 * np.log(a) + 40.0 / smallest_root)


RESOLUTION = 0.15


def resolved_points(span: float, depth: float, minimum: int) -> int:
    """
    Odd point count with sqrt(depth) * h <= RESOLUTION on the coarse grid; odd so that
    the midpoint of a symmetric domain is a node.
    """
    needed = int(np.ceil(span * np.sqrt(max(depth, 1.0)) / RESOLUTION)) + 1
    return max(needed, minimum) | 1


def fpwef_problem(spec: PotentialSpec, smallest_root: Optional[float] = None,
                  points: Optional[int] = None) -> GridProblem:
    """Grid problem for U_I (Dirichlet wall at 0) or U_II (symmetric box) in internal units."""
    u0 = spec.u0
    x_max = default_extent(spec.a, smallest_root)
    span = x_max if spec.kind == WellKind.I else 2.0 * x_max
    points = (points or resolved_points(span, u0, Settings().oracle_points)) | 1

    def well(x):
        return -u0 * np.exp(-np.abs(x))

    if spec.kind == WellKind.I:
        return GridProblem(well, 0.0, x_max, points, Boundary.DIRICHLET_LEFT_DECAY_RIGHT)
    return GridProblem(well, -x_max, x_max, points, Boundary.DECAY_BOTH)


def count_bound_states(spec: PotentialSpec, bound=None) -> int:
    """Number of negative extrapolated eigenvalues of the FPWEF grid problem."""
    expected = len(bound) if bound is not None else 0
    smallest = float(min(bound.roots)) if expected else None
    problem = fpwef_problem(spec, smallest)
    result = grid_diagonalize(problem, expected + 2)
    return result.bound_count


def harmonic_problem(points: int = 2048, extent: float = 10.0) -> GridProblem:
    """Self-test: V = x^2, exact eigenvalues 2n + 1 in these units."""
    return GridProblem(lambda x: x * x, -extent, extent, points, Boundary.DECAY_BOTH)


def box_problem(points: int = 512, length: float = 1.0) -> GridProblem:
    """Self-test: infinite box, exact eigenvalues ((n + 1) pi / L)^2."""
    return GridProblem(lambda x: np.zeros_like(x), 0.0, length, points, Boundary.DIRICHLET_BOTH)


if __name__ == "__main__":
    import argparse
    parser = argparse.ArgumentParser(description="Grid-diagonalize an exponential well.")
    parser.add_argument("--well", choices=["I", "II"], default="I")
    parser.add_argument("--a", type=float, default=8.48)
    parser.add_argument("--count", type=int, default=6)
    args = parser.parse_args()
    spec = PotentialSpec(kind=args.well, a=args.a)
    result = grid_diagonalize(fpwef_problem(spec), args.count)
    for n, value in enumerate(result.eigenvalues):
        print(f"n={n} E/U0={value / spec.u0:.12f} err={result.convergence[n]:.1e}")

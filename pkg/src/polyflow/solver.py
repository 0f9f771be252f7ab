"""End-to-end orchestration: sample complex initial data, build the
homotopy problem, integrate to t=1, restart on collision, Newton-polish,
and cross-check independent starts against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import NoConvergence, ResidualTooLarge, SingularityError, StepBudgetExhausted
from .flow import make_problem
from .integrator import IntegratorConfig, Trajectory, integrate
from .poly import (
    MonicPolynomial,
    cauchy_root_bound,
    newton_refine,
    normalized_residual,
)

_SAMPLE_ATTEMPTS = 1000


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    num_starts: int = 3
    max_restarts_per_start: int = 5
    polish: bool = True
    polish_max_iters: int = 10
    residual_tol: float = 1e-8
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)

    def __post_init__(self):
        if self.num_starts < 1 or self.max_restarts_per_start < 1:
            raise ValueError("num_starts and max_restarts_per_start must be >= 1")
        if self.polish_max_iters < 1:
            raise ValueError("polish_max_iters must be >= 1")
        if self.residual_tol <= 0.0:
            raise ValueError("residual_tol must be positive")


@dataclass
class SolveReport:
    roots: np.ndarray
    residuals: np.ndarray
    pre_polish_residuals: np.ndarray
    restarts_used: int
    starts_used: int
    consensus_discrepancy: float
    warnings: list[dict] = field(default_factory=list)
    trajectory: Trajectory | None = None


def sample_initial_data(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Draw N genuinely complex starting points in the annulus
    [radius/2, radius], resampling the whole set until the minimum
    pairwise separation is at least radius/(10 N).

    Complex (never purely real) initial data is used even for real
    polynomials, which keeps the flow away from real-axis collisions.
    """
    if n < 2:
        raise ValueError("sample_initial_data needs n >= 2")
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    min_sep = radius / (10.0 * n)
    for _ in range(_SAMPLE_ATTEMPTS):
        moduli = rng.uniform(0.5 * radius, radius, size=n)
        angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
        pts = moduli * np.exp(1j * angles)
        if np.any(pts.imag == 0.0):
            continue
        diff = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(diff, np.inf)
        if diff.min() >= min_sep:
            return pts
    raise RuntimeError("could not sample separated initial data")


def newton_polish(
    p: MonicPolynomial, z0: complex, max_iters: int = 10, tol: float = 1e-14
) -> complex:
    """Refine one approximate root by Newton's iteration; best effort
    (the caller inspects the residual)."""
    return newton_refine(p, z0, max_iters=max_iters, tol=tol)


def match_root_sets(a, b):
    """Bijectively pair two equal-size point sets minimizing the
    maximum pairwise distance.

    Greedy nearest-neighbor first; when the greedy bottleneck exceeds
    10x the trivial lower bound (max over points of the distance to its
    nearest counterpart), falls back to an optimal bottleneck assignment
    via bisection over the distance matrix.  Returns (pairing, max_distance)
    with pairing[i] the index in b matched to a[i].
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("match_root_sets needs two equal-length 1-d sets")
    n = a.size
    dist = np.abs(a[:, None] - b[None, :])
    lower_bound = float(np.max(np.minimum(dist.min(axis=1), dist.min(axis=0))))

    order = np.argsort(dist, axis=None)
    pairing = np.full(n, -1)
    used_b = np.zeros(n, dtype=bool)
    matched = 0
    for flat in order:
        i, j = divmod(int(flat), n)
        if pairing[i] == -1 and not used_b[j]:
            pairing[i] = j
            used_b[j] = True
            matched += 1
            if matched == n:
                break
    greedy_max = float(np.max(dist[np.arange(n), pairing]))

    if greedy_max > 10.0 * lower_bound and n > 1:
        pairing, greedy_max = _bottleneck_assignment(dist)
    return pairing, greedy_max


def _bottleneck_assignment(dist: np.ndarray):
    """Optimal bottleneck matching by bisecting the sorted distances and
    testing perfect-matching feasibility."""
    n = dist.shape[0]
    levels = np.unique(dist)
    lo, hi = 0, levels.size - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        adj = csr_matrix(dist <= levels[mid])
        match = maximum_bipartite_matching(adj, perm_type="column")
        if np.all(match >= 0):
            best = match.copy()
            hi = mid - 1
        else:
            lo = mid + 1
    assert best is not None  # the full matrix always admits a matching
    pairing = np.asarray(best)
    max_d = float(np.max(dist[np.arange(n), pairing]))
    return pairing, max_d


def _canonical_order(roots: np.ndarray) -> np.ndarray:
    return roots[np.lexsort((roots.imag, roots.real))]


def solve(target: MonicPolynomial, cfg: SolverConfig | None = None,
          initial_data=None, record_trajectory: bool = False) -> SolveReport:
    """Compute all roots of the target polynomial.

    Degree 1 is solved in closed form.  Otherwise each of
    ``cfg.num_starts`` independent starts samples fresh complex initial
    data (scaled by the Cauchy root bound), integrates the flow to t=1,
    and restarts with new data on collision, up to
    ``cfg.max_restarts_per_start`` times.  Endpoints are Newton-polished
    (unless disabled) and the starts' root sets are matched against each
    other; the maximum matched distance is reported as the consensus
    discrepancy.

    ``initial_data`` overrides the sampled data for the first attempt
    of the first start (useful for warm starts and fixed-point checks).
    """
    cfg = cfg or SolverConfig()
    n = target.degree

    if n == 1:
        root = -target.coeffs[0]
        res = np.array([normalized_residual(target, root)])
        return SolveReport(
            roots=np.array([root]),
            residuals=res,
            pre_polish_residuals=res.copy(),
            restarts_used=0,
            starts_used=1,
            consensus_discrepancy=0.0,
        )

    radius = cauchy_root_bound(target)
    root_sets = []
    total_restarts = 0
    first_traj = None

    for start in range(cfg.num_starts):
        rng = np.random.default_rng(cfg.seed + start)
        result = None
        for attempt in range(cfg.max_restarts_per_start + 1):
            if start == 0 and attempt == 0 and initial_data is not None:
                y0 = np.asarray(initial_data, dtype=np.complex128)
            else:
                y0 = sample_initial_data(n, radius, rng)
            problem = make_problem(target, y0)
            record = "all" if (record_trajectory and start == 0) else "ends"
            try:
                traj = integrate(problem, y0, cfg.integrator, record=record)
            except (SingularityError, StepBudgetExhausted):
                total_restarts += 1
                continue
            result = traj
            break
        if result is None:
            if root_sets:
                break  # keep the starts that worked
            raise NoConvergence(
                f"all {cfg.num_starts} starts exhausted "
                f"{cfg.max_restarts_per_start} restarts each"
            )
        if start == 0:
            first_traj = result
        root_sets.append(result.final.y)

    raw = root_sets[0]
    pre_polish = np.asarray(normalized_residual(target, raw), dtype=float)

    if cfg.polish:
        polished_sets = [
            np.array([
                newton_polish(target, z, max_iters=cfg.polish_max_iters)
                for z in rs
            ])
            for rs in root_sets
        ]
    else:
        polished_sets = root_sets

    consensus = 0.0
    for other in polished_sets[1:]:
        _, d = match_root_sets(polished_sets[0], other)
        consensus = max(consensus, d)

    roots = _canonical_order(polished_sets[0])
    residuals = np.asarray(normalized_residual(target, roots), dtype=float)
    pre_polish = np.sort(pre_polish)

    warnings: list[dict] = []
    tol_per_root = np.full(n, cfg.residual_tol)
    cluster_tol = 1e-6 * radius
    clustered = _cluster_indices(roots, cluster_tol)
    if clustered.size:
        warnings.append(
            {
                "kind": "near_multiple_roots",
                "indices": clustered.tolist(),
                "cluster_tol": cluster_tol,
                "detail": "roots closer than the cluster tolerance; "
                "residual tolerance relaxed to 1e-5 on them",
            }
        )
        tol_per_root[clustered] = np.maximum(tol_per_root[clustered], 1e-5)
    if consensus > 1e-6:
        warnings.append(
            {
                "kind": "consensus_discrepancy",
                "value": consensus,
                "detail": "independent starts disagree beyond 1e-6",
            }
        )

    report = SolveReport(
        roots=roots,
        residuals=residuals,
        pre_polish_residuals=pre_polish,
        restarts_used=total_restarts,
        starts_used=len(root_sets),
        consensus_discrepancy=consensus,
        warnings=warnings,
        trajectory=first_traj if record_trajectory else None,
    )
    bad = residuals > tol_per_root
    if np.any(bad):
        raise ResidualTooLarge(
            f"{int(bad.sum())} root(s) exceed the residual tolerance "
            f"{cfg.residual_tol:g}: {roots[bad]}",
            report=report,
        )
    return report


def _cluster_indices(roots: np.ndarray, tol: float) -> np.ndarray:
    diff = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(diff, np.inf)
    return np.nonzero((diff < tol).any(axis=1))[0]

"""The homotopy problem and the ODE vector field moving the zeros.

Deforming the coefficients along the straight line
``gamma(t) = gamma(0) + (c - gamma(0)) t`` makes the zeros y_n(t) obey

    ydot_n = -[prod_{l != n} (y_n - y_l)]^(-1) * sum_m d_m y_n^(N-m),

with d = c - gamma(0) frozen at construction, so the system is a plain
autonomous ODE.  At t=1 the zeros coincide with the target's roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import flow_rhs
from .errors import InitializationError, SingularityError
from .poly import (
    MonicPolynomial,
    coeffs_from_roots,
    cauchy_root_bound,
    min_pairwise_distance,
    newton_refine,
    poly_eval,
)


@dataclass(frozen=True)
class HomotopyProblem:
    """Target coefficients, start coefficients, and their difference.

    ``collision_tol`` is the separation below which the denominator
    product is considered numerically meaningless: 1e-12 * max(1, R)
    with R the target's Cauchy bound.
    """

    target: MonicPolynomial
    start_coeffs: np.ndarray
    delta: np.ndarray
    collision_tol: float

    @property
    def degree(self) -> int:
        return self.target.degree


@dataclass(frozen=True)
class FlowState:
    t: float
    y: np.ndarray


def make_problem(target: MonicPolynomial, y0) -> HomotopyProblem:
    """Build the homotopy problem from target coefficients and initial
    positions: start coefficients via Vieta on y0, delta by subtraction.

    Rejects coincident initial points.
    """
    y0 = np.asarray(y0, dtype=np.complex128)
    n = target.degree
    if y0.size != n:
        raise InitializationError(
            f"expected {n} initial points, got {y0.size}"
        )
    tol = 1e-12 * max(1.0, cauchy_root_bound(target))
    if n >= 2 and min_pairwise_distance(y0) < tol:
        raise InitializationError(
            "initial points are (nearly) coincident; resample them"
        )
    start = coeffs_from_roots(y0).coeffs
    delta = target.coeffs - start
    return HomotopyProblem(target, start, delta, tol)


def vector_field(problem: HomotopyProblem, y) -> np.ndarray:
    """ydot per the flow equation; autonomous (no t dependence).

    Raises SingularityError when the closest pair of coordinates is
    within the problem's collision tolerance.
    """
    y = np.ascontiguousarray(y, dtype=np.complex128)
    ydot, min_dist, p, q = flow_rhs(y, problem.delta)
    if min_dist < problem.collision_tol:
        raise SingularityError(min_dist, (p, q))
    return ydot


def gamma_at(problem: HomotopyProblem, t: float) -> np.ndarray:
    """Coefficient schedule gamma(t) = gamma(0) + delta * t.

    Equals the start coefficients at t=0 and the target's at t=1; t
    outside [0, 1] is allowed for diagnostics.
    """
    return problem.start_coeffs + problem.delta * t


def homotopy_residual(problem: HomotopyProblem, state: FlowState) -> float:
    """Conservation diagnostic: the y_n(t) should stay exact zeros of
    the polynomial with coefficients gamma(t).

    Returns max_n |p_gamma(t)(y_n)| / (1 + |y_n|)^N; zero along the true
    flow in exact arithmetic.
    """
    p = MonicPolynomial(gamma_at(problem, state.t))
    vals = np.abs(poly_eval(p, state.y)) / (1.0 + np.abs(state.y)) ** p.degree
    return float(np.max(vals))


def identity_fd_check(problem: HomotopyProblem, trajectory, h: float) -> float:
    """Finite-difference verification that the flow's derivative
    identity holds along the root paths.

    For each interior sample y(t) the exact root paths through it are
    followed algebraically: each coordinate is Newton-refined against
    the polynomials with coefficients gamma(t-h), gamma(t), gamma(t+h),
    and the central difference of that path is compared with the vector
    field.  This checks the identity independently of how the
    trajectory was produced.  Returns the max relative deviation
    |fd - ydot| / (1 + |ydot|) over samples and coordinates.
    """
    samples = list(trajectory.samples if hasattr(trajectory, "samples") else trajectory)
    if len(samples) < 3:
        raise ValueError("identity_fd_check needs at least 3 trajectory samples")
    worst = 0.0
    for state in samples[1:-1]:
        t = state.t
        if t - h < 0.0 or t + h > 1.0:
            continue
        p_mid = MonicPolynomial(gamma_at(problem, t))
        p_minus = MonicPolynomial(gamma_at(problem, t - h))
        p_plus = MonicPolynomial(gamma_at(problem, t + h))
        y_mid = np.array(
            [newton_refine(p_mid, z, max_iters=50) for z in state.y]
        )
        y_minus = np.array(
            [newton_refine(p_minus, z, max_iters=50) for z in y_mid]
        )
        y_plus = np.array(
            [newton_refine(p_plus, z, max_iters=50) for z in y_mid]
        )
        fd = (y_plus - y_minus) / (2.0 * h)
        ydot = vector_field(problem, y_mid)
        dev = np.abs(fd - ydot) / (1.0 + np.abs(ydot))
        worst = max(worst, float(np.max(dev)))
    return worst

"""Adaptive embedded Runge-Kutta integration of the complex root flow
over t in [0, 1].

The stepper is the classic Dormand-Prince 5(4) pair (Dormand & Prince
1980, J. Comput. Appl. Math. 6, 19-26).  Complex state is integrated
natively; the error norm uses the complex modulus componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SingularityError, StepBudgetExhausted
from .flow import FlowState, HomotopyProblem, vector_field
from .poly import min_pairwise_distance

# Dormand-Prince 5(4) tableau.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
# 5th-order weights (row 7 of A padded; FSAL pair) and error weights b5 - b4.
_B = np.append(_A[6], 0.0)
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

_MAX_GROWTH = 5.0
_MAX_SHRINK = 0.1


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-10
    atol: float = 1e-12
    initial_step: float = 1e-3
    min_step: float = 1e-14
    max_steps: int = 100_000
    safety_factor: float = 0.9

    def __post_init__(self):
        if not (0.0 < self.min_step <= self.initial_step <= 1.0):
            raise ValueError("need 0 < min_step <= initial_step <= 1")
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise ValueError("tolerances must be positive")
        if not (0.0 < self.safety_factor < 1.0):
            raise ValueError("safety_factor must be in (0, 1)")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass
class Trajectory:
    """Accepted-step states, strictly increasing in t; first at t=0 and
    (on success) last at t=1."""

    samples: list[FlowState] = field(default_factory=list)

    @property
    def final(self) -> FlowState:
        return self.samples[-1]


def integrate_ode(f, y0, cfg: IntegratorConfig, record: str = "ends") -> Trajectory:
    """Generic driver: integrate dy/dt = f(t, y) from t=0 to t=1.

    ``record`` is "ends" (first and last accepted state) or "all" (every
    accepted state).  The last step is clamped so the final state lands
    on t=1 exactly.  Deterministic: identical inputs give bitwise
    identical output.
    """
    if record not in ("ends", "all"):
        raise ValueError(f"unknown sampling policy {record!r}")
    y = np.array(y0, dtype=np.complex128)
    t = 0.0
    traj = Trajectory([FlowState(0.0, y.copy())])
    h = min(cfg.initial_step, 1.0)
    order_exp = 1.0 / 5.0
    k = [None] * 7

    steps = 0
    while t < 1.0:
        if steps >= cfg.max_steps:
            raise StepBudgetExhausted(
                f"no convergence to t=1 within {cfg.max_steps} steps (t={t:.6g})",
                t=t,
                y=y.copy(),
            )
        steps += 1

        last = t + h >= 1.0
        if last:
            h = 1.0 - t

        k[0] = f(t, y)
        for i in range(1, 7):
            yi = y + h * (_A[i] @ np.array(k[:i]))
            k[i] = f(t + _C[i] * h, yi)
        karr = np.array(k)
        y_new = y + h * (_B @ karr)
        err_vec = h * (_E @ karr)

        scale = cfg.atol + cfg.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)))

        if err <= 1.0:
            t = 1.0 if last else t + h
            y = y_new
            state = FlowState(t, y.copy())
            if record == "all":
                traj.samples.append(state)
            elif t == 1.0:
                traj.samples.append(state)

        if err == 0.0:
            factor = _MAX_GROWTH
        else:
            factor = min(
                _MAX_GROWTH, max(_MAX_SHRINK, cfg.safety_factor * err ** -order_exp)
            )
        h = h * factor
        if h < cfg.min_step and t < 1.0:
            raise StepBudgetExhausted(
                f"step size underflow ({h:.3e} < min_step) at t={t:.6g}",
                t=t,
                y=y.copy(),
                underflow=True,
            )

    return traj


def integrate(
    problem: HomotopyProblem,
    y0,
    cfg: IntegratorConfig | None = None,
    record: str = "ends",
) -> Trajectory:
    """Integrate the root flow from the initial positions to t=1.

    Raises SingularityError (with the offending pair, distance, and t)
    when coordinates collide, either detected by the vector field or
    inferred from step-size underflow while the minimum pairwise
    separation is shrinking; raises StepBudgetExhausted otherwise when
    the budget runs out.
    """
    cfg = cfg or IntegratorConfig()

    def f(t, y):
        try:
            return vector_field(problem, y)
        except SingularityError as exc:
            raise SingularityError(exc.distance, exc.pair, t=t) from None

    try:
        return integrate_ode(f, y0, cfg, record=record)
    except StepBudgetExhausted as exc:
        if exc.underflow and problem.degree >= 2 and exc.y is not None:
            d_here = min_pairwise_distance(exc.y)
            d_start = min_pairwise_distance(np.asarray(y0, dtype=np.complex128))
            if d_here < 0.5 * d_start:
                raise _nearest_pair_singularity(exc.y, exc.t) from None
        raise


def _nearest_pair_singularity(y, t):
    diff = np.abs(y[:, None] - y[None, :])
    np.fill_diagonal(diff, np.inf)
    flat = int(np.argmin(diff))
    p, q = divmod(flat, y.size)
    return SingularityError(float(diff[p, q]), (min(p, q), max(p, q)), t=t)

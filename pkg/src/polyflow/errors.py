"""Exception hierarchy."""

from __future__ import annotations


class PolyflowError(Exception):
    """Base class for all library errors."""


class InitializationError(PolyflowError):
    """Initial data rejected (coincident points)."""


class SingularityError(PolyflowError):
    """Two flow coordinates (nearly) collided; carries diagnostics."""

    def __init__(self, distance: float, pair: tuple[int, int], t: float | None = None):
        self.distance = distance
        self.pair = pair
        self.t = t
        where = f" at t={t:.6g}" if t is not None else ""
        super().__init__(
            f"flow coordinates {pair[0]} and {pair[1]} within {distance:.3e}{where}"
        )


class StepBudgetExhausted(PolyflowError):
    """The integrator consumed its step budget (or the step size
    underflowed) before reaching t=1; carries the last accepted state."""

    def __init__(self, message: str, t: float = 0.0, y=None, underflow: bool = False):
        self.t = t
        self.y = y
        self.underflow = underflow
        super().__init__(message)


class NoConvergence(PolyflowError):
    """Every start exhausted its restart budget."""


class ResidualTooLarge(PolyflowError):
    """Integration finished but some root residual exceeds tolerance."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class OracleFailure(PolyflowError):
    """The validation oracle did not converge; carries the last iterate."""

    def __init__(self, message: str, last=None):
        self.last = last
        super().__init__(message)

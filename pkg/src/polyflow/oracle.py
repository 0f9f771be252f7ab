"""Independent root finders used for validation: the closed-form
quadratic and Durand-Kerner simultaneous iteration.

These share no code path with the ODE flow (the iteration is a
fixed-point method, not an integration), which makes them meaningful
cross-checks.  They live in the library rather than the tests so the
CLI bench subcommand can report oracle discrepancies.
"""

from __future__ import annotations

import cmath

import numpy as np

from ._backend import weierstrass_step
from .errors import OracleFailure
from .poly import MonicPolynomial, cauchy_root_bound

# Angular offset of the starting circle; irrational multiple of pi so the
# start never aligns with symmetric root patterns.
_START_OFFSET = 1.0 / np.sqrt(2.0)


def quadratic_roots(c1: complex, c2: complex) -> tuple[complex, complex]:
    """Roots of z^2 + c1 z + c2, numerically stable: the
    larger-magnitude root avoids cancellation, the other comes from the
    product of roots."""
    disc = cmath.sqrt(c1 * c1 - 4.0 * c2)
    if (c1.conjugate() * disc).real < 0.0:
        disc = -disc
    r1 = -(c1 + disc) / 2.0
    if r1 == 0.0:
        return 0.0 + 0.0j, -c1
    return r1, c2 / r1


def durand_kerner(
    p: MonicPolynomial, tol: float = 1e-12, max_iters: int = 500
) -> np.ndarray:
    """All roots by simultaneous Weierstrass iteration.

    Starts from points on a circle of radius the Cauchy bound with an
    irrational angular offset; converged when the largest update is at
    most ``tol``.  Raises OracleFailure (carrying the last iterate) if
    max_iters is exceeded.
    """
    n = p.degree
    if n == 1:
        return np.array([-p.coeffs[0]])
    radius = cauchy_root_bound(p)
    angles = 2.0 * np.pi * np.arange(n) / n + _START_OFFSET
    z = np.ascontiguousarray(radius * np.exp(1j * angles))
    coeffs = np.ascontiguousarray(p.coeffs)
    for _ in range(max_iters):
        z, max_update = weierstrass_step(z, coeffs)
        if max_update <= tol:
            return z
    raise OracleFailure(
        f"Durand-Kerner did not converge in {max_iters} iterations "
        f"(last update {max_update:.3e})",
        last=z,
    )

"""Pure-Python (numpy) twin of the compiled kernels in ``_kernels.pyx``.

Kept in lockstep with the Cython source: same signatures, same
accumulation order (so results agree to the last few ulps), used as the
import-time fallback when the extension is unavailable.
"""

from __future__ import annotations

import numpy as np


def flow_rhs(y: np.ndarray, delta: np.ndarray):
    """Right-hand side of the root-flow ODE.

    Returns ``(ydot, min_dist, p, q)`` where (p, q) is the closest pair
    of coordinates.  The caller decides whether min_dist is an acceptable
    separation; ydot entries near a collision may be inf/nan.
    """
    n = y.shape[0]
    diff = y[:, None] - y[None, :]
    adist = np.abs(diff)
    np.fill_diagonal(adist, np.inf)
    flat = np.argmin(adist)
    pi, pj = divmod(flat, n)
    if pi > pj:
        pi, pj = pj, pi
    min_dist = adist[pi, pj]

    np.fill_diagonal(diff, 1.0)
    denom = np.multiply.reduce(diff, axis=1)
    tail = np.zeros(n, dtype=np.complex128)
    for c in delta:
        tail = tail * y + c
    with np.errstate(divide="ignore", invalid="ignore"):
        ydot = -tail / denom
    return ydot, float(min_dist), int(pi), int(pj)


def weierstrass_step(z: np.ndarray, coeffs: np.ndarray):
    """One Jacobi-style Durand-Kerner sweep for a monic polynomial.

    ``coeffs`` are the non-leading coefficients in descending power
    order.  Returns ``(z_new, max_update)``.
    """
    n = z.shape[0]
    p = np.ones(n, dtype=np.complex128)
    for c in coeffs:
        p = p * z + c
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    denom = np.multiply.reduce(diff, axis=1)
    w = p / denom
    return z - w, float(np.max(np.abs(w)))

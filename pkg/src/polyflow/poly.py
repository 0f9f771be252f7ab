"""Complex monic polynomials: representation, evaluation, Vieta
coefficients, and simple root bounds.

Coefficients are stored in descending power order *without* the leading
1, i.e. ``coeffs[m-1]`` multiplies ``z**(N-m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _as_complex_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MonicPolynomial:
    """z^N + c_1 z^(N-1) + ... + c_N, stored as coeffs = (c_1, ..., c_N)."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", _as_complex_vector(self.coeffs, "coeffs")
        )

    @property
    def degree(self) -> int:
        return self.coeffs.size

    def __call__(self, z):
        return poly_eval(self, z)


def poly_eval(p: MonicPolynomial, z):
    """Evaluate the monic polynomial by Horner's scheme.

    ``z`` may be a complex scalar or a numpy array (evaluated
    elementwise).
    """
    acc = np.ones_like(np.asarray(z, dtype=np.complex128))
    for c in p.coeffs:
        acc = acc * z + c
    if acc.ndim == 0:
        return complex(acc)
    return acc


def eval_tail(d, z):
    """Evaluate sum_m d_m z^(N-m), the degree-(N-1) polynomial with
    coefficient list ``d`` (no leading term), by Horner.

    Equals poly_eval(P_c, z) - poly_eval(P_g, z) for d = c - g: the
    monic leading terms cancel.
    """
    d = np.asarray(d, dtype=np.complex128)
    acc = np.zeros_like(np.asarray(z, dtype=np.complex128))
    for c in d:
        acc = acc * z + c
    if acc.ndim == 0:
        return complex(acc)
    return acc


def deriv_eval(p: MonicPolynomial, z):
    """Evaluate the derivative N z^(N-1) + sum (N-m) c_m z^(N-m-1)."""
    n = p.degree
    acc = np.asarray(float(n), dtype=np.complex128)
    for m, c in enumerate(p.coeffs[:-1], start=1):
        acc = acc * z + (n - m) * c
    if acc.ndim == 0:
        return complex(acc)
    return acc


def coeffs_from_roots(roots) -> MonicPolynomial:
    """Vieta map: c_m = (-1)^m e_m(roots), via the incremental product
    expansion of prod (z - x_n).

    O(N^2); the result depends on the input ordering only in the last
    couple of ulps (the accumulation order changes under permutation).
    """
    roots = _as_complex_vector(roots, "roots")
    n = roots.size
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0] = 1.0
    for k, r in enumerate(roots):
        c[1 : k + 2] -= r * c[: k + 1].copy()
    return MonicPolynomial(c[1:])


def cauchy_root_bound(p: MonicPolynomial) -> float:
    """R = 1 + max |c_m|; every root has modulus <= R."""
    return 1.0 + float(np.max(np.abs(p.coeffs)))


def min_pairwise_distance(points) -> float:
    """Smallest |y_n - y_l| over pairs n < l.  Requires >= 2 points."""
    pts = np.asarray(points, dtype=np.complex128)
    if pts.size < 2:
        raise ValueError("min_pairwise_distance needs at least two points")
    diff = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def normalized_residual(p: MonicPolynomial, z) -> float | np.ndarray:
    """|P(z)| / (1 + |z|)^N, the degree- and scale-adjusted residual."""
    val = np.abs(poly_eval(p, z)) / (1.0 + np.abs(z)) ** p.degree
    if np.ndim(val) == 0:
        return float(val)
    return val


def newton_refine(p: MonicPolynomial, z0: complex, max_iters: int = 10,
                  tol: float = 1e-14) -> complex:
    """Newton's iteration on ``p`` from ``z0``; best effort.

    Stops when the normalized residual drops below ``tol`` or the
    derivative underflows (returns the input unchanged in that case so
    the caller can flag a root cluster).
    """
    z = complex(z0)
    for _ in range(max_iters):
        if normalized_residual(p, z) <= tol:
            return z
        dp = deriv_eval(p, z)
        if abs(dp) < 1e-300:
            return complex(z0)
        z = z - poly_eval(p, z) / dp
    return z

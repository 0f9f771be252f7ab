# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: the homotopy vector field and the
Durand-Kerner sweep.

Both have the same O(N^2) structure (per-point denominator product over
all other points) and dominate runtime for every solve.  The pure-Python
twin lives in ``_kernels_py``; ``_backend`` picks one at import.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.complex128_t cplx


def flow_rhs(cnp.ndarray[cplx, ndim=1] y, cnp.ndarray[cplx, ndim=1] delta):
    """Right-hand side of the root-flow ODE.

    Returns ``(ydot, min_dist, p, q)`` where (p, q) is the closest pair
    of coordinates.  The caller decides whether min_dist is an acceptable
    separation; ydot entries near a collision may be inf/nan.
    """
    cdef Py_ssize_t n = y.shape[0]
    cdef cnp.ndarray[cplx, ndim=1] ydot = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i, j, m
    cdef double complex prod, tail, diff
    cdef double d, min_dist = np.inf
    cdef Py_ssize_t pi = 0, pj = 0

    for i in range(n):
        prod = 1.0
        for j in range(n):
            if j == i:
                continue
            diff = y[i] - y[j]
            prod = prod * diff
            if j > i:
                d = abs(diff)
                if d < min_dist:
                    min_dist = d
                    pi = i
                    pj = j
        tail = 0.0
        for m in range(n):
            tail = tail * y[i] + delta[m]
        ydot[i] = -tail / prod

    return ydot, min_dist, pi, pj


def weierstrass_step(cnp.ndarray[cplx, ndim=1] z, cnp.ndarray[cplx, ndim=1] coeffs):
    """One Jacobi-style Durand-Kerner sweep for a monic polynomial.

    ``coeffs`` are the non-leading coefficients in descending power
    order.  Returns ``(z_new, max_update)``.
    """
    cdef Py_ssize_t n = z.shape[0]
    cdef cnp.ndarray[cplx, ndim=1] z_new = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i, j, m
    cdef double complex p, denom, w
    cdef double max_update = 0.0
    cdef double aw

    for i in range(n):
        p = 1.0
        for m in range(n):
            p = p * z[i] + coeffs[m]
        denom = 1.0
        for j in range(n):
            if j != i:
                denom = denom * (z[i] - z[j])
        w = p / denom
        z_new[i] = z[i] - w
        aw = abs(w)
        if aw > max_update:
            max_update = aw

    return z_new, max_update

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic Jacobi eigensolver and batch state sampling.

Same algorithms and API as ``bellbounds.kernels.fallback``; the fallback is
the reference implementation for parity tests.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot, sqrt

cnp.import_array()

BACKEND = "compiled"

DEF MAX_DIM = 16
DEF MAX_SWEEPS = 100
DEF OFF_TOL = 1e-14


class NumericError(RuntimeError):
    pass


def _numeric_error():
    # raise the package exception when available, stay importable standalone
    try:
        from ..errors import NumericError as E
    except ImportError:
        E = NumericError
    raise E("Jacobi eigensolver did not converge in %d sweeps" % MAX_SWEEPS)


def eigh(H):
    """Full spectral decomposition of a Hermitian matrix by cyclic Jacobi."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] A = np.array(H, dtype=np.complex128)
    cdef int n = A.shape[0]
    if n > MAX_DIM:
        raise ValueError("dimension above compiled kernel limit %d" % MAX_DIM)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] V = np.eye(n, dtype=np.complex128)
    cdef double scale = np.linalg.norm(A)
    if scale < 1.0:
        scale = 1.0
    cdef double off, mag, tau, sign, t, c, s
    cdef double complex apq, phase, cp, cq
    cdef int sweep, p, q, k
    cdef bint converged = False

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += (A[p, q].real * A[p, q].real
                            + A[p, q].imag * A[p, q].imag)
        off = sqrt(off)
        if off < OFF_TOL * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                tau = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                sign = 1.0 if tau >= 0 else -1.0
                # hypot keeps t finite for the huge tau of near-negligible
                # off-diagonal elements, where tau*tau would overflow
                t = sign / (fabs(tau) + hypot(1.0, tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    cp = A[k, p]
                    cq = A[k, q]
                    A[k, p] = c * cp - s * phase.conjugate() * cq
                    A[k, q] = s * phase * cp + c * cq
                for k in range(n):
                    cp = A[p, k]
                    cq = A[q, k]
                    A[p, k] = c * cp - s * phase * cq
                    A[q, k] = s * phase.conjugate() * cp + c * cq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                for k in range(n):
                    cp = V[k, p]
                    cq = V[k, q]
                    V[k, p] = c * cp - s * phase.conjugate() * cq
                    V[k, q] = s * phase * cp + c * cq
    if not converged:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += (A[p, q].real * A[p, q].real
                            + A[p, q].imag * A[p, q].imag)
        if sqrt(off) >= OFF_TOL * scale:
            _numeric_error()
    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def assemble_root_matrices(params):
    from .fallback import assemble_root_matrices as impl
    return impl(params)


def batch_expectations(params, op):
    """Tr[W' op] for W' = B^2 / Tr[B^2] per parameter row."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] P = np.ascontiguousarray(params, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] O = np.ascontiguousarray(op, dtype=np.complex128)
    cdef Py_ssize_t n = P.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double complex B[4][4]
    cdef double complex W[4][4]
    cdef double complex acc, val
    cdef double tr
    cdef Py_ssize_t r, i, j, k

    for r in range(n):
        B[0][0] = P[r, 0]
        B[1][1] = P[r, 1]
        B[2][2] = P[r, 2]
        B[3][3] = P[r, 3]
        B[0][1] = P[r, 4] + 1j * P[r, 5]
        B[1][2] = P[r, 6] + 1j * P[r, 7]
        B[2][3] = P[r, 8] + 1j * P[r, 9]
        B[0][2] = P[r, 10] + 1j * P[r, 11]
        B[1][3] = P[r, 12] + 1j * P[r, 13]
        B[0][3] = P[r, 14] + 1j * P[r, 15]
        B[1][0] = B[0][1].conjugate()
        B[2][1] = B[1][2].conjugate()
        B[3][2] = B[2][3].conjugate()
        B[2][0] = B[0][2].conjugate()
        B[3][1] = B[1][3].conjugate()
        B[3][0] = B[0][3].conjugate()
        for i in range(4):
            for j in range(4):
                acc = 0
                for k in range(4):
                    acc += B[i][k] * B[k][j]
                W[i][j] = acc
        tr = W[0][0].real + W[1][1].real + W[2][2].real + W[3][3].real
        val = 0
        for i in range(4):
            for j in range(4):
                val += W[i][j] * O[j, i]
        out[r] = val.real / tr
    return out

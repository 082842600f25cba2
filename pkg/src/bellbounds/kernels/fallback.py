"""Pure-numpy kernels: cyclic Jacobi eigensolver and batch state sampling.

Mirrors the API of the compiled extension ``bellbounds.kernels._core`` so the
two are interchangeable; see ``bellbounds.kernels`` for the selection logic.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import NumericError

BACKEND = "python"

_MAX_SWEEPS = 100
_OFF_TOL = 1e-14


def _off_norm(A: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part.

    Computed by masking the diagonal rather than subtracting squared norms,
    which would cancel catastrophically once the matrix is nearly diagonal.
    """
    off = np.abs(A) ** 2
    np.fill_diagonal(off, 0.0)
    return math.sqrt(float(np.sum(off)))


def eigh(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full spectral decomposition of a Hermitian matrix by cyclic Jacobi.

    Returns eigenvalues sorted ascending and the matching eigenvector columns.
    """
    A = np.array(H, dtype=np.complex128)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(A)))
    converged = False
    for _ in range(_MAX_SWEEPS):
        off = _off_norm(A)
        if off < _OFF_TOL * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                tau = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                sign = 1.0 if tau >= 0 else -1.0
                # hypot keeps t finite for the huge tau of near-negligible
                # off-diagonal elements, where tau*tau would overflow
                t = sign / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # unitary G: identity except G[p,p]=c, G[p,q]=s*phase,
                # G[q,p]=-s*conj(phase), G[q,q]=c; apply A <- G^dag A G
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * np.conj(phase) * colq
                A[:, q] = s * phase * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * phase * rowq
                A[q, :] = s * np.conj(phase) * rowp + c * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * np.conj(phase) * vq
                V[:, q] = s * phase * vp + c * vq
    if not converged:
        off = _off_norm(A)
        if off >= _OFF_TOL * scale:
            raise NumericError(
                f"Jacobi eigensolver did not converge in {_MAX_SWEEPS} sweeps"
            )
    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def assemble_root_matrices(params: np.ndarray) -> np.ndarray:
    """Hermitian 4x4 matrices B from rows of 16 real parameters.

    Diagonal is params[0:4]; the upper triangle takes params[4:16] as
    real/imaginary pairs in the fixed order (1,2),(2,3),(3,4),(1,3),(2,4),(1,4).
    """
    params = np.asarray(params, dtype=np.float64)
    n = params.shape[0]
    B = np.zeros((n, 4, 4), dtype=np.complex128)
    for k in range(4):
        B[:, k, k] = params[:, k]
    pairs = [((0, 1), 4), ((1, 2), 6), ((2, 3), 8), ((0, 2), 10), ((1, 3), 12), ((0, 3), 14)]
    for (i, j), k in pairs:
        z = params[:, k] + 1j * params[:, k + 1]
        B[:, i, j] = z
        B[:, j, i] = np.conj(z)
    return B


def batch_expectations(params: np.ndarray, op: np.ndarray) -> np.ndarray:
    """Tr[W' op] for the density matrices W' = B^2 / Tr[B^2] per parameter row."""
    B = assemble_root_matrices(params)
    W = B @ B
    tr = np.einsum("nii->n", W).real
    vals = np.einsum("nij,ji->n", W, np.asarray(op, dtype=np.complex128)).real
    return vals / tr

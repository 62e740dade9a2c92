"""Self-contained dense complex linear algebra for small Hermitian problems.

All spectral work is done by Jacobi rotation methods: a cyclic-by-row complex
Jacobi eigensolver for Hermitian matrices and a one-sided Jacobi sweep for
singular values.  Matrices here never exceed 32x32 (five qubits), so the
O(n^3)-per-sweep cost is irrelevant and the payoff is determinism and high
absolute accuracy, including for structurally zero eigenvalues.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    NoConvergenceError,
    NonSquareError,
    NotHermitianError,
    NotPSDError,
)

# Global tolerances: hermiticity/PSD checks, eigen-reconstruction residual,
# and equality assertions.  Double precision with <=32-dim matrices.
HERM_TOL = 1e-10
PSD_TOL = 1e-10
RECON_TOL = 1e-8
EQ_TOL = 1e-9

_OFF_TOL = 1e-14        # off-diagonal convergence target (relative to scale)
_MAX_SWEEPS = 60


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a C-contiguous complex128 2-D array, raising on non-square."""
    a = np.array(m, dtype=np.complex128, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(m, tol: float = HERM_TOL) -> bool:
    a = np.asarray(m)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def _check_hermitian(a: np.ndarray) -> None:
    dev = np.max(np.abs(a - a.conj().T))
    if dev > HERM_TOL:
        raise NotHermitianError(f"max |M - M^dag| = {dev:.3e} exceeds {HERM_TOL:.1e}")


def herm_eig(m, max_sweeps: int = _MAX_SWEEPS, vectors: bool = True):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns ``(vals, vecs)`` with eigenvalues sorted descending (stable sort)
    and eigenvectors as matching columns, or ``(vals, None)`` when
    ``vectors=False``.  Raises NotHermitianError if the symmetry check fails
    and NoConvergenceError if the sweep budget is exhausted.
    """
    a = as_complex_matrix(m)
    _check_hermitian(a)
    n = a.shape[0]
    w = np.eye(n, dtype=np.complex128) if vectors else None
    if n == 1:
        vals = np.array([a[0, 0].real])
        return (vals, w) if vectors else (vals, None)

    scale = max(1.0, float(np.max(np.abs(a))))
    thresh = _OFF_TOL * scale
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                t = abs(apq)
                if t > off:
                    off = t
                if t <= thresh:
                    continue
                phase = apq / t
                theta = 0.5 * math.atan2(2.0 * t, (a[q, q] - a[p, p]).real)
                c = math.cos(theta)
                s = math.sin(theta)
                sp = s * phase
                spc = s * phase.conjugate()
                # A <- V^dag A V with the rotation chosen to zero a[p, q]
                col_p = a[:, p] * c - a[:, q] * spc
                col_q = a[:, p] * sp + a[:, q] * c
                a[:, p] = col_p
                a[:, q] = col_q
                row_p = a[p, :] * c - a[q, :] * sp
                row_q = a[p, :] * spc + a[q, :] * c
                a[p, :] = row_p
                a[q, :] = row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if vectors:
                    w_p = w[:, p] * c - w[:, q] * spc
                    w_q = w[:, p] * sp + w[:, q] * c
                    w[:, p] = w_p
                    w[:, q] = w_q
        if off <= thresh:
            break
    else:
        raise NoConvergenceError(
            f"Jacobi sweep budget of {max_sweeps} exhausted (off-diagonal {off:.3e})"
        )

    vals = np.diag(a).real.copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    if vectors:
        return vals, w[:, order]
    return vals, None


def herm_eigvals(m, psd: bool = False, max_sweeps: int = _MAX_SWEEPS) -> np.ndarray:
    """Descending real eigenvalues of a Hermitian matrix.

    With ``psd=True``, eigenvalues in ``[-PSD_TOL, 0)`` are clamped to zero.
    """
    vals, _ = herm_eig(m, max_sweeps=max_sweeps, vectors=False)
    if psd:
        vals = np.where((vals < 0.0) & (vals >= -PSD_TOL), 0.0, vals)
    return vals


def psd_sqrt(m, zero_floor: float = 0.0) -> np.ndarray:
    """Hermitian PSD square root R of a PSD matrix, R @ R ~= m.

    Eigenvalues below ``-PSD_TOL`` raise NotPSDError; values in
    ``[-PSD_TOL, zero_floor)`` are treated as exact zeros, which keeps the
    kernel of R exact when m is known to be rank deficient.
    """
    vals, vecs = herm_eig(m)
    low = float(vals.min())
    if low < -PSD_TOL:
        raise NotPSDError(f"eigenvalue {low:.3e} below -{PSD_TOL:.1e}")
    vals = np.where(vals < max(zero_floor, 0.0), 0.0, vals)
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return 0.5 * (root + root.conj().T)


def singular_values(m, max_sweeps: int = _MAX_SWEEPS) -> np.ndarray:
    """Descending singular values by one-sided Jacobi column orthogonalization.

    Works directly on the matrix (the Gram matrix is never formed), so tiny
    and exactly-zero singular values come out with absolute error near machine
    precision instead of sqrt(eps).
    """
    a = as_complex_matrix(m).copy()
    n = a.shape[1]
    if n == 1:
        return np.array([float(np.linalg.norm(a[:, 0]))])

    for _ in range(max_sweeps):
        converged = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                cp = a[:, p]
                cq = a[:, q]
                apq = complex(np.vdot(cp, cq))
                t = abs(apq)
                if t == 0.0:
                    continue
                app = float(np.real(np.vdot(cp, cp)))
                aqq = float(np.real(np.vdot(cq, cq)))
                if t <= 1e-15 * math.sqrt(app * aqq):
                    continue
                converged = False
                phase = apq / t
                theta = 0.5 * math.atan2(2.0 * t, aqq - app)
                c = math.cos(theta)
                s = math.sin(theta)
                col_p = cp * c - cq * (s * phase.conjugate())
                col_q = cp * (s * phase) + cq * c
                a[:, p] = col_p
                a[:, q] = col_q
        if converged:
            break
    else:
        raise NoConvergenceError(
            f"one-sided Jacobi sweep budget of {max_sweeps} exhausted"
        )

    sv = np.sqrt(np.sum(np.abs(a) ** 2, axis=0))
    return np.sort(sv)[::-1]


def trace_norm(m) -> float:
    """Trace norm (sum of singular values); Hermitian inputs take the
    eigenvalue fast path sum(|eig|)."""
    a = as_complex_matrix(m)
    if is_hermitian(a):
        return float(np.sum(np.abs(herm_eigvals(a))))
    return float(np.sum(singular_values(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two complex matrices."""
    return np.kron(np.asarray(a, dtype=np.complex128),
                   np.asarray(b, dtype=np.complex128))

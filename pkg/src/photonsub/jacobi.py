"""Cyclic Jacobi eigenvalue routine for dense real symmetric matrices."""

import math

import numpy as np

from .errors import ConvergenceError

__all__ = ["jacobi_eigvalsh"]


def _off_norm(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigvalsh(a, max_sweeps=30, off_tol=1e-12):
    """Eigenvalues of a real symmetric matrix by cyclic-by-row Jacobi rotations.

    Each sweep visits the upper-triangle pairs ``(p, q)`` in row order.  Pairs
    whose element is below ``off_tol / n`` are skipped: if every element is
    below that threshold the off-diagonal Frobenius norm is already under
    ``off_tol``, so skipping never blocks convergence.  This makes sweeps over
    large, mostly block-diagonal matrices cheap.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Symmetric input; not modified.
    max_sweeps : int
        Sweep budget before :class:`ConvergenceError` is raised.
    off_tol : float
        Convergence threshold on the off-diagonal Frobenius norm.

    Returns
    -------
    ndarray
        Eigenvalues in ascending order.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("expected a square matrix")
    if not np.allclose(a, a.T, rtol=0, atol=1e-13 * max(1.0, float(np.abs(a).max(initial=0)))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    skip = off_tol / max(n, 1)

    for _ in range(max_sweeps):
        if _off_norm(a) < off_tol:
            return np.sort(np.diag(a))
        rows, cols = np.nonzero(np.triu(np.abs(a) > skip, 1))
        for p, q in zip(rows.tolist(), cols.tolist()):
            apq = a[p, q]
            if abs(apq) <= skip:
                continue
            app, aqq = a[p, p], a[q, q]
            # Rutishauser's stable rotation: t = tan(phi), |phi| <= pi/4
            tau = (aqq - app) / (2.0 * apq)
            t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            col_p = a[:, p].copy()
            col_q = a[:, q].copy()
            new_p = c * col_p - s * col_q
            new_q = s * col_p + c * col_q
            a[:, p] = new_p
            a[:, q] = new_q
            a[p, :] = new_p
            a[q, :] = new_q
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = a[q, p] = 0.0
    if _off_norm(a) < off_tol:
        return np.sort(np.diag(a))
    raise ConvergenceError(f"Jacobi did not converge within {max_sweeps} sweeps")

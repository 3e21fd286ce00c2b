"""Negativity and log-negativity of Schmidt-ladder states.

Two independent routes are provided.  The closed form uses the fact that the
partial transpose of a pure ladder state splits into 1x1 blocks ``c_n^2`` and
2x2 blocks with eigenvalues ``+-c_m c_n``, so ``1 + 2N = (sum_n c_n)^2``.  The
oracle route builds the full density matrix on a truncated two-mode basis,
partially transposes mode b and diagonalizes it with Jacobi rotations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, SizeError
from .fock import SchmidtLadderState, log_sum_coefficients
from .jacobi import jacobi_eigvalsh

D_MAX = 1600
NEG_EIG_FLOOR = 1e-10
JACOBI_SWEEPS = 30
JACOBI_OFF_TOL = 1e-12

__all__ = [
    "D_MAX",
    "EntanglementReport",
    "DenseTwoModeState",
    "densify",
    "partial_transpose",
    "pt_negativity_oracle",
    "pt_spectrum_structural",
    "expand_spectrum",
    "log_negativity_closed",
    "entanglement_ratio",
]


@dataclass(frozen=True)
class EntanglementReport:
    sum_c: float
    negativity: float
    log_negativity: float
    ratio_eq16: float
    ratio_of_logs: Optional[float]  # None where r = 0 makes it undefined
    tail_rel: float


@dataclass(frozen=True, eq=False)
class DenseTwoModeState:
    """Fock amplitudes ``amps[m, n] = <m, n|psi>`` on a truncated basis."""

    amps: np.ndarray

    @property
    def dim_a(self) -> int:
        return self.amps.shape[0]

    @property
    def dim_b(self) -> int:
        return self.amps.shape[1]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def inner(self, other: "DenseTwoModeState") -> complex:
        """``<self|other>``; bases must match."""
        return complex(np.vdot(self.amps, other.amps))


def densify(state: SchmidtLadderState, dim: int) -> DenseTwoModeState:
    """Place a ladder state on a ``dim x dim`` Fock grid and renormalize."""
    k, n_terms = state.offset_k, len(state)
    if dim < n_terms + k:
        raise DimensionError(f"dim = {dim} cannot hold {n_terms} terms at offset {k}")
    amps = np.zeros((dim, dim), dtype=complex)
    n = np.arange(n_terms)
    amps[n + k, n] = state.amplitudes()
    amps /= np.linalg.norm(amps)
    return DenseTwoModeState(amps)


def partial_transpose(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the mode-b indices of a two-mode density matrix."""
    r4 = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    return r4.transpose(0, 3, 2, 1).reshape(dim_a * dim_b, dim_a * dim_b)


def pt_negativity_oracle(dense: DenseTwoModeState):
    """Negativity from a dense eigensolve of the partially transposed state.

    Complex Hermitian matrices ``H = A + iB`` are handled through the real
    symmetric embedding ``[[A, -B], [B, A]]``, whose spectrum repeats every
    eigenvalue of ``H`` twice.

    Returns
    -------
    negativity : float
        Sum of the moduli of the negative eigenvalues (values above
        ``-NEG_EIG_FLOOR`` count as zero).
    spectrum : ndarray
        All eigenvalues, ascending.
    """
    da, db = dense.dim_a, dense.dim_b
    if da * db > D_MAX:
        raise SizeError(f"two-mode dimension {da * db} exceeds D_MAX = {D_MAX}")
    psi = dense.amps.reshape(-1)
    rho = np.outer(psi, psi.conj())
    pt = partial_transpose(rho, da, db)
    if np.any(pt.imag != 0):
        a, b = pt.real, pt.imag
        big = np.block([[a, -b], [b, a]])
        spectrum = jacobi_eigvalsh(big, JACOBI_SWEEPS, JACOBI_OFF_TOL)[::2]
    else:
        spectrum = jacobi_eigvalsh(pt.real, JACOBI_SWEEPS, JACOBI_OFF_TOL)
    negative = spectrum[spectrum <= -NEG_EIG_FLOOR]
    return float(-negative.sum()), spectrum


def pt_spectrum_structural(state: SchmidtLadderState):
    """Analytic partial-transpose spectrum as ``[(eigenvalue, multiplicity), ...]``.

    Diagonal terms give ``c_n^2``; each pair ``m < n`` gives ``+c_m c_n`` and
    ``-c_m c_n``.  Zero eigenvalues of the surrounding Fock space are not
    listed (see :func:`expand_spectrum`).
    """
    c = state.mags
    iu = np.triu_indices(c.size, 1)
    cross = (c[:, None] * c[None, :])[iu]
    values = np.concatenate([c * c, cross, -cross])
    uniq, counts = np.unique(values, return_counts=True)
    return [(float(v), int(m)) for v, m in zip(uniq, counts)]


def expand_spectrum(pairs, size: Optional[int] = None) -> np.ndarray:
    """Flatten ``(value, multiplicity)`` pairs, zero-pad to ``size`` and sort."""
    values = np.repeat([v for v, _ in pairs], [m for _, m in pairs]).astype(float)
    if size is not None:
        if size < values.size:
            raise DimensionError("size smaller than number of listed eigenvalues")
        values = np.concatenate([values, np.zeros(size - values.size)])
    return np.sort(values)


def entanglement_ratio(state: SchmidtLadderState):
    """``((sum c_n) e^{-r})^2`` and the ratio of base-2 log-negativities.

    The first value compares the arguments ``1 + 2N`` of the two logarithms
    (subtracted state over squeezed vacuum, the latter being ``e^{2r}``); the
    second compares the log-negativities themselves and is ``None`` at r = 0.
    """
    if state.params is None:
        raise ValueError("state carries no squeeze parameters")
    r = state.params.r
    log_sum, _ = log_sum_coefficients(state)
    ratio_eq16 = math.exp(2.0 * (log_sum - r))
    ratio_of_logs = log_sum / r if r > 0 else None
    return ratio_eq16, ratio_of_logs


def log_negativity_closed(state: SchmidtLadderState) -> EntanglementReport:
    """Closed-form entanglement report, ``E = 2 log2(sum_n c_n)``."""
    log_sum, tail_rel = log_sum_coefficients(state)
    log_neg = 2.0 * log_sum / math.log(2.0)
    negativity = 0.5 * math.expm1(2.0 * log_sum)
    if state.params is not None:
        ratio_eq16, ratio_of_logs = entanglement_ratio(state)
    else:
        ratio_eq16, ratio_of_logs = math.nan, None
    return EntanglementReport(
        sum_c=math.exp(log_sum),
        negativity=negativity,
        log_negativity=log_neg,
        ratio_eq16=ratio_eq16,
        ratio_of_logs=ratio_of_logs,
        tail_rel=tail_rel,
    )

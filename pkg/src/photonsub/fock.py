"""Truncated Fock-space coefficients of squeezed and photon-subtracted states.

All states handled here are Schmidt ladders

    |psi> = sum_n c_n exp(i n theta) |n + k, n>

with nonnegative magnitudes ``c_n`` and a constant photon-number difference
``k`` between mode a and mode b.  Magnitudes are evaluated in log space and
the series is cut adaptively once a geometric bound on the discarded tail
drops below the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import OverflowGuard, RangeError

R_MAX = 5.0
K_MAX = 8
N_HARD_CAP = 2_000_000
_FIRST_BLOCK = 256

__all__ = [
    "R_MAX",
    "K_MAX",
    "N_HARD_CAP",
    "SqueezeParams",
    "SchmidtLadderState",
    "tmsv_coefficients",
    "subtracted_coefficients",
    "ladder_coefficients",
    "log_sum_coefficients",
    "truncate_state",
]


@dataclass(frozen=True)
class SqueezeParams:
    """Two-mode squeezing parameter xi = r exp(i theta)."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        r = float(self.r)
        theta = float(self.theta)
        if not math.isfinite(r) or r < 0:
            raise RangeError(f"squeeze magnitude must be finite and >= 0, got {self.r!r}")
        if not math.isfinite(theta):
            raise RangeError(f"phase must be finite, got {self.theta!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)

    @property
    def kappa_mag(self) -> float:
        return math.tanh(self.r)

    @property
    def kappa(self) -> complex:
        return self.kappa_mag * complex(math.cos(self.theta), math.sin(self.theta))

    @property
    def log_tanh(self) -> float:
        """log(tanh r), accurate for both small and large r (-inf at r = 0)."""
        if self.r == 0.0:
            return -math.inf
        e = math.exp(-2.0 * self.r)
        return math.log(-math.expm1(-2.0 * self.r)) - math.log1p(e)

    @property
    def log_cosh(self) -> float:
        return self.r + math.log1p(math.exp(-2.0 * self.r)) - math.log(2.0)


@dataclass(frozen=True, eq=False)
class SchmidtLadderState:
    """Magnitudes ``c_0..c_N`` of a ladder state with photon offset ``offset_k``.

    ``tail_bound`` bounds ``sum_{n > N} c_n`` of the untruncated series.
    """

    offset_k: int
    mags: np.ndarray
    theta: float = 0.0
    tail_bound: float = 0.0
    params: Optional[SqueezeParams] = field(default=None, repr=False)

    def __post_init__(self):
        mags = np.array(self.mags, dtype=float)
        if mags.ndim != 1 or mags.size == 0:
            raise RangeError("mags must be a non-empty 1-d sequence")
        if np.any(mags < 0) or not np.all(np.isfinite(mags)):
            raise RangeError("mags must be finite and nonnegative")
        if int(self.offset_k) != self.offset_k or self.offset_k < 0:
            raise RangeError(f"offset_k must be a nonnegative integer, got {self.offset_k!r}")
        if not self.tail_bound >= 0:
            raise RangeError("tail_bound must be nonnegative")
        mags.setflags(write=False)
        object.__setattr__(self, "mags", mags)
        object.__setattr__(self, "offset_k", int(self.offset_k))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "tail_bound", float(self.tail_bound))

    def __len__(self):
        return self.mags.size

    @property
    def norm_sq(self) -> float:
        return float(np.dot(self.mags, self.mags))

    def amplitudes(self) -> np.ndarray:
        """Complex coefficients ``c_n exp(i n theta)``."""
        n = np.arange(self.mags.size)
        return self.mags * np.exp(1j * n * self.theta)


def _check_params(params: SqueezeParams, tol: float):
    if params.r > R_MAX:
        raise RangeError(f"r = {params.r} exceeds R_MAX = {R_MAX}")
    if not 0 < tol < 1:
        raise RangeError(f"tol must lie in (0, 1), got {tol!r}")


def _half_log_binom(n: np.ndarray, k: int) -> np.ndarray:
    # 0.5 * log C(n + k, k); summing k logs keeps full relative precision at large n
    out = np.zeros(n.shape, dtype=float)
    for i in range(1, k + 1):
        out += np.log(n + i)
    return 0.5 * (out - math.lgamma(k + 1))


def _adaptive_series(
    log_terms: Callable[[np.ndarray], np.ndarray],
    log_ratio_bound: Callable[[np.ndarray], np.ndarray],
    tol: float,
):
    """Evaluate ``exp(log_terms(n))`` until the geometric tail bound is met.

    ``log_ratio_bound(n)`` must bound ``log(c_{m+1}/c_m)`` for every m >= n.
    The series stops at the first N with
    ``c_N q_N / (1 - q_N) < tol * min(1, sum_{n<=N} c_n)``.
    Returns ``(mags, tail_bound)``.
    """
    log_tol = math.log(tol)
    n_max = _FIRST_BLOCK
    while True:
        n = np.arange(n_max, dtype=float)
        logc = log_terms(n)
        logq = log_ratio_bound(n)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_tail = np.where(logq < 0, logc + logq - np.log(-np.expm1(logq)), np.inf)
        log_cum = np.logaddexp.accumulate(logc)
        ok = log_tail < log_tol + np.minimum(log_cum, 0.0)
        hits = np.flatnonzero(ok)
        if hits.size:
            stop = int(hits[0])
            return np.exp(logc[: stop + 1]), float(np.exp(log_tail[stop]))
        if n_max >= N_HARD_CAP:
            raise OverflowGuard(
                f"truncation needs more than N_HARD_CAP = {N_HARD_CAP} terms for tol = {tol}"
            )
        n_max = min(2 * n_max, N_HARD_CAP)


def tmsv_coefficients(params: SqueezeParams, tol: float = 1e-12) -> SchmidtLadderState:
    """Schmidt coefficients ``tanh(r)^n / cosh(r)`` of the two-mode squeezed vacuum."""
    _check_params(params, tol)
    if params.r == 0.0:
        return SchmidtLadderState(0, np.ones(1), params.theta, 0.0, params)
    lt, lc = params.log_tanh, params.log_cosh
    mags, tail = _adaptive_series(
        lambda n: n * lt - lc,
        lambda n: np.full(n.shape, lt),
        tol,
    )
    return SchmidtLadderState(0, mags, params.theta, tail, params)


def ladder_coefficients(k: int, params: SqueezeParams, tol: float = 1e-12) -> SchmidtLadderState:
    """Normalized ``b^k |xi>`` for any ``k >= 0``.

    ``c_n = tanh(r)^n sqrt(C(n+k, k)) / cosh(r)^(k+1)``; ``k = 0`` is the
    squeezed vacuum itself.
    """
    if int(k) != k or not 0 <= k <= K_MAX:
        raise RangeError(f"k must be an integer in [0, {K_MAX}], got {k!r}")
    return _ladder(int(k), params, tol)


def _ladder(k: int, params: SqueezeParams, tol: float) -> SchmidtLadderState:
    _check_params(params, tol)
    if params.r == 0.0:
        return SchmidtLadderState(k, np.ones(1), params.theta, 0.0, params)
    lt = params.log_tanh
    lnorm = -(k + 1) * params.log_cosh
    mags, tail = _adaptive_series(
        lambda n: n * lt + _half_log_binom(n, k) + lnorm,
        lambda n: lt + 0.5 * np.log1p(k / (n + 1.0)),
        tol,
    )
    return SchmidtLadderState(k, mags, params.theta, tail, params)


def subtracted_coefficients(k: int, params: SqueezeParams, tol: float = 1e-12) -> SchmidtLadderState:
    """State left after ideal subtraction of ``k >= 1`` photons from mode b.

    Equivalent to the squeezing transform of ``|k, 0>``; ``k = 1`` adds exactly
    one photon to mode a of the squeezed vacuum.

    Raises
    ------
    RangeError
        If ``k`` is outside ``[1, K_MAX]``, ``r > R_MAX`` or ``tol`` not in (0, 1).
    OverflowGuard
        If more than ``N_HARD_CAP`` terms would be needed.
    """
    if int(k) != k or not 1 <= k <= K_MAX:
        raise RangeError(f"k must be an integer in [1, {K_MAX}], got {k!r}")
    return ladder_coefficients(k, params, tol)


def log_sum_coefficients(state: SchmidtLadderState):
    """Return ``(log(sum_n c_n), tail_rel)`` for the stored magnitudes.

    ``tail_rel`` is the tail bound relative to the stored sum.
    """
    mags = state.mags
    top = float(mags.max())
    if top == 0.0:
        raise RangeError("state has no nonzero coefficients")
    total = float(np.sum(mags / top))
    log_sum = math.log(top) + math.log(total)
    return log_sum, state.tail_bound / math.exp(log_sum)


def truncate_state(state: SchmidtLadderState, n_terms: int) -> SchmidtLadderState:
    """Keep the first ``n_terms`` magnitudes and renormalize to unit norm.

    The discarded mass is folded into ``tail_bound`` (in renormalized units).
    """
    if n_terms < 1:
        raise RangeError("n_terms must be >= 1")
    kept = state.mags[:n_terms]
    scale = math.sqrt(float(np.dot(kept, kept)))
    dropped = float(np.sum(state.mags[n_terms:])) + state.tail_bound
    return SchmidtLadderState(
        state.offset_k, kept / scale, state.theta, dropped / scale, state.params
    )

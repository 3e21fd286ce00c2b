"""Heralded photon subtraction with a beam splitter and a number-resolving detector.

Mode b of the squeezed vacuum meets a vacuum ancilla v on a beam splitter,
``b -> t b + rho v`` (real orthogonal convention).  Projecting the ancilla on
``|k>`` maps ``|n, n>`` to ``sqrt(C(n, k)) t^(n-k) rho^k |n, n-k>``, so the
conditional state is again a ladder with offset ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHerald, RangeError
from .fock import (
    SchmidtLadderState,
    SqueezeParams,
    _adaptive_series,
    _check_params,
    _half_log_binom,
    _ladder,
    tmsv_coefficients,
)

__all__ = ["HERALD_K_MAX", "BeamSplitterSpec", "HeraldOutcome", "herald_subtract", "fidelity"]

HERALD_K_MAX = 20
_MIN_PROBABILITY = 1e-300


@dataclass(frozen=True)
class BeamSplitterSpec:
    t_amp: float
    rho_amp: float

    def __post_init__(self):
        if not (0.0 < self.t_amp <= 1.0 and 0.0 <= self.rho_amp < 1.0):
            raise RangeError("need 0 < t_amp <= 1 and 0 <= rho_amp < 1")
        if abs(self.t_amp ** 2 + self.rho_amp ** 2 - 1.0) > 1e-12:
            raise RangeError("t_amp^2 + rho_amp^2 must equal 1")

    @classmethod
    def from_reflectivity(cls, rho2: float) -> "BeamSplitterSpec":
        """Build from the intensity reflectivity ``rho_amp^2``."""
        if not 0.0 <= rho2 < 1.0:
            raise RangeError(f"reflectivity must lie in [0, 1), got {rho2!r}")
        return cls(math.sqrt(1.0 - rho2), math.sqrt(rho2))


@dataclass(frozen=True)
class HeraldOutcome:
    state: SchmidtLadderState
    probability: float
    k_detected: int
    fidelity_ideal: float


def fidelity(s1: SchmidtLadderState, s2: SchmidtLadderState) -> float:
    """``|<s1|s2>|^2`` for normalized ladder states (0 across different offsets)."""
    if s1.offset_k != s2.offset_k:
        return 0.0
    n = min(len(s1), len(s2))
    overlap = np.sum(s1.amplitudes()[:n].conj() * s2.amplitudes()[:n])
    return float(min(abs(overlap) ** 2, 1.0))


def herald_subtract(
    params: SqueezeParams, bs: BeamSplitterSpec, k: int, tol: float = 1e-12
) -> HeraldOutcome:
    """Conditional state and probability for detecting ``k`` reflected photons."""
    if int(k) != k or not 0 <= k <= HERALD_K_MAX:
        raise RangeError(f"k must be an integer in [0, {HERALD_K_MAX}], got {k!r}")
    k = int(k)
    _check_params(params, tol)
    if k > 0 and bs.rho_amp == 0.0:
        raise DegenerateHerald(f"no reflection, so {k} photons can never be detected")
    if k > 0 and params.r == 0.0:
        raise DegenerateHerald("vacuum input has no photons to subtract")

    if k == 0 and bs.rho_amp == 0.0:
        # nothing leaves mode b: the conditional state is the input itself
        return HeraldOutcome(tmsv_coefficients(params, tol), 1.0, 0, 1.0)

    lt = params.log_tanh
    log_eff = lt + math.log(bs.t_amp)
    # log d_m = (m+k) log tanh r - log cosh r + 0.5 log C(m+k, k) + m log t + k log rho
    log_pref = -params.log_cosh + (k * (lt + math.log(bs.rho_amp)) if k else 0.0)
    if params.r == 0.0:
        d = np.array([math.exp(log_pref)])
        tail = 0.0
    else:
        d, tail = _adaptive_series(
            lambda m: m * log_eff + _half_log_binom(m, k) + log_pref,
            lambda m: log_eff + 0.5 * np.log1p(k / (m + 1.0)),
            tol,
        )
    probability = float(np.dot(d, d))
    if probability < _MIN_PROBABILITY:
        raise DegenerateHerald(f"herald probability {probability:.3g} underflows")
    norm = math.sqrt(probability)
    state = SchmidtLadderState(k, d / norm, params.theta, tail / norm, params)

    # the ideal reference is b^k|xi>; k may exceed K_MAX here so the full
    # outcome distribution can be enumerated
    ideal = tmsv_coefficients(params, tol) if k == 0 else _ladder(k, params, tol)
    return HeraldOutcome(state, probability, k, fidelity(state, ideal))

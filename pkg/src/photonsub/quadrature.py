"""Quadrature-space wavefunctions of ladder states and vortex winding numbers.

Quadratures follow ``a = (x_a + i y_a) / sqrt(2)``.  Winding numbers are
measured on counterclockwise loops in the ``(x_a, x_b)`` plane with ``x_a``
horizontal; a positive value means the phase of the field increases along
the loop.  With this convention the single-photon vortex at ``theta = pi/2``
has winding -1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MagnitudeError, PhaseStepError, RangeError, SingularityError
from .fock import R_MAX, SchmidtLadderState, SqueezeParams

M_MAX = 400
GRID_LIMIT = 8.0
MAG_FLOOR = 1e-12
MAX_PHASE_STEP = 0.9 * math.pi

__all__ = [
    "M_MAX",
    "GRID_LIMIT",
    "MAG_FLOOR",
    "QuadratureField",
    "make_axis",
    "oscillator_eigenfunction",
    "oscillator_table",
    "wavefunction_series",
    "wavefunction_k1_closed",
    "fit_global_constant",
    "winding_number",
]


@dataclass(frozen=True, eq=False)
class QuadratureField:
    """Samples ``values[i, j] = Psi(xa_axis[i], xb_axis[j])``."""

    xa_axis: np.ndarray
    xb_axis: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def mass(self) -> float:
        """Riemann sum of ``|Psi|^2`` over the grid."""
        dxa = self.xa_axis[1] - self.xa_axis[0]
        dxb = self.xb_axis[1] - self.xb_axis[0]
        return float(np.sum(np.abs(self.values) ** 2) * dxa * dxb)


def make_axis(lo: float, hi: float, points: int) -> np.ndarray:
    """Uniform axis on ``[lo, hi]`` that is exactly symmetric when ``lo == -hi``."""
    if points < 2 or not hi > lo:
        raise RangeError("axis needs hi > lo and at least 2 points")
    axis = np.linspace(lo, hi, points)
    if lo == -hi:
        axis = 0.5 * (axis - axis[::-1])
    return axis


def _check_axis(axis) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise RangeError("axis must be 1-d with at least 2 points")
    step = np.diff(axis)
    if np.any(step <= 0):
        raise RangeError("axis must be strictly increasing")
    if not np.allclose(step, step[0], rtol=1e-9, atol=0):
        raise RangeError("axis must be uniformly spaced")
    if axis[0] < -GRID_LIMIT or axis[-1] > GRID_LIMIT:
        raise RangeError(f"axis must lie within [-{GRID_LIMIT}, {GRID_LIMIT}]")
    return axis


def oscillator_table(m_max: int, x) -> np.ndarray:
    """Rows ``psi_0(x) .. psi_{m_max}(x)`` from the normalized three-term recurrence."""
    if m_max > M_MAX:
        raise RangeError(f"m = {m_max} exceeds M_MAX = {M_MAX}")
    x = np.asarray(x, dtype=float)
    out = np.empty((m_max + 1,) + x.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if m_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for m in range(1, m_max):
        out[m + 1] = x * math.sqrt(2.0 / (m + 1)) * out[m] - math.sqrt(m / (m + 1)) * out[m - 1]
    return out


def oscillator_eigenfunction(m: int, x):
    """Normalized Hermite function ``psi_m(x)``; accepts scalar or array ``x``."""
    if m < 0:
        raise RangeError("m must be nonnegative")
    val = oscillator_table(m, x)[m]
    return float(val) if np.ndim(val) == 0 else val


def wavefunction_series(state: SchmidtLadderState, xa_axis, xb_axis) -> QuadratureField:
    """``Psi(x_a, x_b) = sum_n c_n e^{i n theta} psi_{n+k}(x_a) psi_n(x_b)`` on a grid."""
    xa = _check_axis(xa_axis)
    xb = _check_axis(xb_axis)
    k, n_terms = state.offset_k, len(state)
    if n_terms - 1 + k > M_MAX:
        raise RangeError(f"state needs psi up to m = {n_terms - 1 + k} > M_MAX = {M_MAX}")
    phi_a = oscillator_table(n_terms - 1 + k, xa)[k:]
    phi_b = oscillator_table(n_terms - 1, xb)
    amps = state.amplitudes()
    if state.theta == 0.0:
        amps = amps.real
    values = phi_a.T @ (amps[:, None] * phi_b)
    meta = {"source": "series", "offset_k": k, "n_terms": n_terms, "theta": state.theta}
    if state.params is not None:
        meta["r"] = state.params.r
    return QuadratureField(xa, xb, values, meta)


def wavefunction_k1_closed(params: SqueezeParams, xa_axis, xb_axis) -> QuadratureField:
    """Closed-form single-photon-subtracted wavefunction.

    With ``kappa = tanh(r) e^{i theta}`` and ``s = x_a^2 + x_b^2``::

        Psi = sqrt(2) e^{i theta} (x_a - kappa x_b)
              / ((1 - kappa^2)^{3/2} sqrt(pi) cosh^2 r)
              * exp[(2 x_a x_b kappa - s kappa^2) / (1 - kappa^2) - s / 2]

    The Gaussian uses the sum ``x_a^2 + x_b^2`` (Mehler kernel), not a product.
    """
    if params.r >= R_MAX:
        raise RangeError(f"r must be below R_MAX = {R_MAX}")
    xa = _check_axis(xa_axis)
    xb = _check_axis(xb_axis)
    kappa = params.kappa
    one_m_k2 = 1.0 - kappa * kappa
    if abs(one_m_k2) < 1e-12:
        raise SingularityError("1 - kappa^2 vanishes")
    XA, XB = np.meshgrid(xa, xb, indexing="ij")
    s = XA * XA + XB * XB
    pref = (
        math.sqrt(2.0)
        * cmath.exp(1j * params.theta)
        / (one_m_k2 ** 1.5 * math.sqrt(math.pi) * math.cosh(params.r) ** 2)
    )
    values = pref * (XA - kappa * XB) * np.exp(
        (2.0 * XA * XB * kappa - s * kappa * kappa) / one_m_k2 - 0.5 * s
    )
    meta = {"source": "closed_k1", "offset_k": 1, "theta": params.theta, "r": params.r}
    return QuadratureField(xa, xb, values, meta)


def fit_global_constant(reference: np.ndarray, target: np.ndarray):
    """Least-squares complex ``a`` with ``target ~ a * reference``.

    Returns ``(a, max_rel_dev)`` where the deviation is
    ``max |target - a*reference| / max |target|``.
    """
    ref = np.ravel(reference)
    tgt = np.ravel(target)
    a = np.vdot(ref, tgt) / np.vdot(ref, ref)
    dev = np.abs(tgt - a * ref).max() / np.abs(tgt).max()
    return complex(a), float(dev)


def _loop_indices(field: QuadratureField, loop):
    xa_lo, xa_hi, xb_lo, xb_hi = loop
    xa, xb = field.xa_axis, field.xb_axis

    def snap(axis, v):
        i = int(np.argmin(np.abs(axis - v)))
        step = axis[1] - axis[0]
        if abs(axis[i] - v) > 1e-6 * step:
            raise RangeError(f"loop coordinate {v} is not on the grid")
        return i

    i0, i1 = snap(xa, xa_lo), snap(xa, xa_hi)
    j0, j1 = snap(xb, xb_lo), snap(xb, xb_hi)
    if not (i1 > i0 and j1 > j0):
        raise RangeError("loop must have positive extent in both directions")
    ia = np.concatenate([
        np.arange(i0, i1),                 # bottom, x_a increasing
        np.full(j1 - j0, i1),              # right, x_b increasing
        np.arange(i1, i0, -1),             # top, x_a decreasing
        np.full(j1 - j0, i0),              # left, x_b decreasing
    ])
    jb = np.concatenate([
        np.full(i1 - i0, j0),
        np.arange(j0, j1),
        np.full(i1 - i0, j1),
        np.arange(j1, j0, -1),
    ])
    return ia, jb


def winding_number(field: QuadratureField, loop) -> int:
    """Topological charge enclosed by an axis-aligned rectangle.

    Parameters
    ----------
    field : QuadratureField
    loop : tuple of float
        ``(xa_lo, xa_hi, xb_lo, xb_hi)``; corners must be grid points.

    Raises
    ------
    MagnitudeError
        If ``|Psi| < MAG_FLOOR`` anywhere on the loop.
    PhaseStepError
        If a wrapped phase step reaches ``0.9 pi``; refine the grid.
    """
    ia, jb = _loop_indices(field, loop)
    z = field.values[ia, jb]
    if np.any(np.abs(z) < MAG_FLOOR):
        raise MagnitudeError("field vanishes on the loop; move or resize the loop")
    steps = np.angle(np.roll(z, -1) * np.conj(z))
    worst = float(np.abs(steps).max())
    if worst >= MAX_PHASE_STEP:
        raise PhaseStepError(
            f"phase step {worst:.3f} rad along loop is too large; refine the grid"
        )
    return int(round(steps.sum() / (2.0 * math.pi)))

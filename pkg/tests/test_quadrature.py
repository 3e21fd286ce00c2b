import math

import numpy as np
import pytest

from photonsub import (
    MagnitudeError,
    PhaseStepError,
    RangeError,
    SingularityError,
    SqueezeParams,
    ladder_coefficients,
    make_axis,
    oscillator_eigenfunction,
    subtracted_coefficients,
    tmsv_coefficients,
    wavefunction_k1_closed,
    wavefunction_series,
    winding_number,
)
from photonsub.quadrature import M_MAX, QuadratureField, fit_global_constant, oscillator_table

from oracles import hermite_function_exact

AX81 = make_axis(-4, 4, 81)
UNIT = (-0.5, 0.5, -0.5, 0.5)


def test_ground_state_origin():
    assert oscillator_eigenfunction(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert oscillator_eigenfunction(0, 0.0) == pytest.approx(0.751126, abs=1e-6)
    assert oscillator_eigenfunction(1, 0.0) == 0.0


@pytest.mark.parametrize("m,x", [(10, 1.3), (3, -0.7), (25, 2.2), (40, 0.1)])
def test_recurrence_matches_exact_hermite(m, x):
    assert oscillator_eigenfunction(m, x) == pytest.approx(hermite_function_exact(m, x),
                                                           rel=1e-10, abs=1e-13)


def test_eigenfunctions_bounded_and_orthonormal():
    x = np.linspace(-8, 8, 4001)
    tab = oscillator_table(15, x)
    assert np.abs(tab).max() <= 0.8
    gram = tab @ tab.T * (x[1] - x[0])
    np.testing.assert_allclose(gram, np.eye(16), atol=1e-10)
    assert np.abs(oscillator_table(M_MAX, x)).max() <= 0.8


def test_eigenfunction_range():
    with pytest.raises(RangeError):
        oscillator_eigenfunction(M_MAX + 1, 0.0)


def test_make_axis_symmetric():
    ax = make_axis(-4, 4, 81)
    np.testing.assert_array_equal(ax, -ax[::-1])


def test_series_vacuum():
    f = wavefunction_series(tmsv_coefficients(SqueezeParams(0.0)), AX81, AX81)
    assert f.values[40, 40] == pytest.approx(1 / math.sqrt(math.pi), rel=1e-14)
    assert np.unravel_index(np.abs(f.values).argmax(), f.values.shape) == (40, 40)


def test_series_single_photon_node():
    f = wavefunction_series(subtracted_coefficients(1, SqueezeParams(0.0)), AX81, AX81)
    assert np.all(f.values[40, :] == 0.0)


def test_series_equals_closed_form():
    p = SqueezeParams(0.5, math.pi / 2)
    series = wavefunction_series(subtracted_coefficients(1, p), AX81, AX81)
    closed = wavefunction_k1_closed(p, AX81, AX81)
    const, dev = fit_global_constant(closed.values, series.values)
    assert dev <= 1e-8
    # the ladder convention drops the global e^{i theta}
    assert const == pytest.approx(-1j, abs=1e-12)


def test_closed_form_core_and_parity():
    p = SqueezeParams(0.7, 0.3)
    f = wavefunction_k1_closed(p, AX81, AX81)
    assert f.values[40, 40] == 0
    np.testing.assert_allclose(f.values[::-1, ::-1], -f.values, atol=1e-15)


def test_closed_form_singularity():
    # kappa = +-1 is unreachable with a real phase, so patch a pathological params object
    class Fake:
        r, theta, kappa = 1.0, 0.0, 1.0

    with pytest.raises(SingularityError):
        wavefunction_k1_closed(Fake(), AX81, AX81)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_series_parity(k):
    f = wavefunction_series(ladder_coefficients(k, SqueezeParams(0.8, 1.1)), AX81, AX81)
    np.testing.assert_allclose(f.values[::-1, ::-1], (-1) ** k * f.values, atol=1e-10)


def test_theta_zero_real():
    f = wavefunction_series(subtracted_coefficients(2, SqueezeParams(0.8)), AX81, AX81)
    assert np.abs(np.imag(f.values)).max() <= 1e-12


@pytest.mark.parametrize("k,r,half", [(0, 0.5, 5), (1, 0.5, 5), (1, 1.0, 5), (2, 1.0, 6),
                                      (1, 1.5, 8)])
def test_series_mass(k, r, half):
    # r = 1.5 spreads well past +-5 and needs the full grid limit
    ax = make_axis(-half, half, 20 * half + 1)
    f = wavefunction_series(ladder_coefficients(k, SqueezeParams(r, 0.4)), ax, ax)
    assert 0.98 <= f.mass() <= 1.001


def test_series_grid_checks():
    s = tmsv_coefficients(SqueezeParams(0.3))
    with pytest.raises(RangeError):
        wavefunction_series(s, np.linspace(-9, 9, 50), AX81)
    with pytest.raises(RangeError):
        wavefunction_series(s, np.array([0.0, 0.1, 0.3]), AX81)
    with pytest.raises(RangeError):
        wavefunction_series(s, AX81[::-1], AX81)


def test_series_size_limit():
    s = subtracted_coefficients(1, SqueezeParams(3.0))
    with pytest.raises(RangeError):
        wavefunction_series(s, AX81, AX81)


# ---------------------------------------------------------------- winding


def vortex_field(n=81, k=1, r=0.5):
    ax = make_axis(-4, 4, n)
    return wavefunction_series(ladder_coefficients(k, SqueezeParams(r, math.pi / 2)), ax, ax)


def test_winding_single_photon_vortex():
    assert winding_number(vortex_field(), UNIT) == -1


def test_winding_matches_prefactor_phase():
    # x_a - i|kappa| x_b alone: counterclockwise phase decreases by 2 pi
    ax = make_axis(-4, 4, 81)
    XA, XB = np.meshgrid(ax, ax, indexing="ij")
    f = QuadratureField(ax, ax, XA - 1j * math.tanh(0.5) * XB)
    assert winding_number(f, UNIT) == -1
    g = QuadratureField(ax, ax, XA + 1j * XB)
    assert winding_number(g, UNIT) == 1


def test_winding_tmsv_zero():
    ax = make_axis(-4, 4, 81)
    for theta in (0.0, math.pi / 2):
        f = wavefunction_series(tmsv_coefficients(SqueezeParams(0.5, theta)), ax, ax)
        assert winding_number(f, UNIT) == 0


@pytest.mark.parametrize("loop", [UNIT, (-1, 1, -1, 1), (-2, 1.5, -1, 2)])
def test_winding_grid_stable(loop):
    coarse = winding_number(vortex_field(81), loop)
    assert winding_number(vortex_field(161), loop) == coarse
    assert winding_number(vortex_field(321), loop) == coarse


def test_winding_k2_reported():
    # two off-center charges: none inside the unit square, both inside the 2x2 square
    assert winding_number(vortex_field(161, k=2), UNIT) == 0
    assert winding_number(vortex_field(161, k=2), (-1, 1, -1, 1)) == -2


def test_winding_magnitude_error():
    f = vortex_field(81)
    with pytest.raises(MagnitudeError):
        winding_number(f, (0.0, 1.0, 0.0, 1.0))  # corner sits on the core


def test_winding_phase_step_error():
    ax = make_axis(-4, 4, 5)
    XA, XB = np.meshgrid(ax, ax, indexing="ij")
    # charge 4 sampled at 45-degree steps: each step is a half turn
    f = QuadratureField(ax, ax, (XA + 1j * XB) ** 4)
    with pytest.raises(PhaseStepError):
        winding_number(f, (-2, 2, -2, 2))


def test_winding_loop_off_grid():
    with pytest.raises(RangeError):
        winding_number(vortex_field(81), (-0.55, 0.5, -0.5, 0.5))

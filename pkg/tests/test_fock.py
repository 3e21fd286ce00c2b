import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photonsub import (
    K_MAX,
    R_MAX,
    OverflowGuard,
    RangeError,
    SchmidtLadderState,
    SqueezeParams,
    densify,
    ladder_coefficients,
    log_sum_coefficients,
    subtracted_coefficients,
    tmsv_coefficients,
    truncate_state,
)
from photonsub import fock

from oracles import ladder_sum_mp, subtract_dense, tmsv_dense

R_HALF = math.atanh(0.5)


def test_params_validation():
    with pytest.raises(RangeError):
        SqueezeParams(-0.1)
    with pytest.raises(RangeError):
        SqueezeParams(float("nan"))
    p = SqueezeParams(1.0, math.pi / 2)
    assert p.kappa == pytest.approx(1j * math.tanh(1.0))
    assert 0 <= p.kappa_mag < 1


@pytest.mark.parametrize("r", [1e-8, 0.1, 1.0, 3.0, 5.0])
def test_log_helpers_accurate(r):
    p = SqueezeParams(r)
    assert p.log_tanh == pytest.approx(math.log(math.tanh(r)), rel=1e-12)
    assert p.log_cosh == pytest.approx(math.log(math.cosh(r)), rel=1e-12, abs=1e-15)


def test_tmsv_vacuum():
    s = tmsv_coefficients(SqueezeParams(0.0), 1e-12)
    assert s.offset_k == 0
    np.testing.assert_array_equal(s.mags, [1.0])


def test_tmsv_half_tanh():
    s = tmsv_coefficients(SqueezeParams(R_HALF), 1e-12)
    np.testing.assert_allclose(s.mags[:3], [0.8660254037844386, 0.4330127018922193,
                                            0.21650635094610965], rtol=1e-12)
    # direct summation of squares
    assert math.fsum(s.mags ** 2) == pytest.approx(1.0, abs=1e-14)


def test_tmsv_phase_independent_mags():
    a = tmsv_coefficients(SqueezeParams(1.0, 0.0))
    b = tmsv_coefficients(SqueezeParams(1.0, math.pi / 2))
    assert np.array_equal(a.mags, b.mags)
    assert a.tail_bound < 1e-12


def test_tmsv_matches_matrix_exponential():
    dense = tmsv_dense(0.3, 0.7, 30)
    ours = densify(tmsv_coefficients(SqueezeParams(0.3, 0.7)), 30).amps
    np.testing.assert_allclose(ours, dense, atol=1e-11)


def test_subtracted_k1_vacuum_is_single_photon():
    s = subtracted_coefficients(1, SqueezeParams(0.0))
    assert s.offset_k == 1
    np.testing.assert_array_equal(s.mags, [1.0])


def test_subtracted_k1_half_tanh():
    s = subtracted_coefficients(1, SqueezeParams(R_HALF))
    n = np.arange(len(s))
    np.testing.assert_allclose(s.mags, 0.75 * 0.5 ** n * np.sqrt(n + 1), rtol=1e-12)
    assert s.mags[1] == pytest.approx(0.5303300858899106, rel=1e-12)


@pytest.fixture(scope="module")
def tmsv_half_dense():
    return tmsv_dense(R_HALF, 0.4, 40)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_subtracted_matches_dense_annihilation(k, tmsv_half_dense):
    dim = 40
    p = SqueezeParams(R_HALF, 0.4)
    oracle = subtract_dense(tmsv_half_dense, k)
    ours = densify(truncate_state(subtracted_coefficients(k, p), dim - k), dim).amps
    phase = np.vdot(ours, oracle)
    assert abs(phase) == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(oracle, phase / abs(phase) * ours, atol=1e-9)


@pytest.mark.parametrize("r", [0.1, 1.0, 2.5])
def test_k3_normalization(r):
    s = subtracted_coefficients(3, SqueezeParams(r))
    assert math.fsum(s.mags ** 2) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("r", [0.2, 0.8, 1.5])
def test_k0_general_formula_equals_tmsv(r):
    p = SqueezeParams(r)
    a = tmsv_coefficients(p)
    b = ladder_coefficients(0, p)
    assert len(a) == len(b)
    np.testing.assert_allclose(a.mags, b.mags, rtol=1e-13)


def test_range_errors():
    with pytest.raises(RangeError):
        subtracted_coefficients(0, SqueezeParams(0.5))
    with pytest.raises(RangeError):
        subtracted_coefficients(K_MAX + 1, SqueezeParams(0.5))
    with pytest.raises(RangeError):
        tmsv_coefficients(SqueezeParams(R_MAX + 0.1))
    with pytest.raises(RangeError):
        tmsv_coefficients(SqueezeParams(1.0), tol=0.0)
    with pytest.raises(RangeError):
        tmsv_coefficients(SqueezeParams(1.0), tol=1.0)


def test_overflow_guard(monkeypatch):
    monkeypatch.setattr(fock, "N_HARD_CAP", 300)
    with pytest.raises(OverflowGuard):
        subtracted_coefficients(8, SqueezeParams(4.0), 1e-12)


def test_largest_state_fits_under_cap():
    s = subtracted_coefficients(K_MAX, SqueezeParams(R_MAX))
    assert len(s) < fock.N_HARD_CAP
    assert abs(s.norm_sq - 1) <= 2 * s.tail_bound + 1e-10


def test_state_is_immutable():
    s = tmsv_coefficients(SqueezeParams(0.5))
    with pytest.raises(ValueError):
        s.mags[0] = 2.0


@pytest.mark.parametrize("r", [0.3, 1.0, 2.0])
def test_log_sum_tmsv_is_r(r):
    log_sum, tail_rel = log_sum_coefficients(tmsv_coefficients(SqueezeParams(r)))
    assert log_sum == pytest.approx(r, abs=1e-12)
    assert tail_rel < 1e-12


def test_log_sum_trivial_and_k1():
    assert log_sum_coefficients(SchmidtLadderState(1, [1.0]))[0] == 0.0
    log_sum, _ = log_sum_coefficients(subtracted_coefficients(1, SqueezeParams(0.5)))
    assert math.exp(log_sum) == pytest.approx(1.907, abs=1e-3)
    assert math.exp(log_sum) == pytest.approx(ladder_sum_mp(1, 0.5), rel=1e-12)


def test_truncate_state_renormalizes():
    s = subtracted_coefficients(2, SqueezeParams(1.0))
    t = truncate_state(s, 10)
    assert len(t) == 10
    assert t.norm_sq == pytest.approx(1.0, abs=1e-15)
    assert t.tail_bound > s.tail_bound


# ---------------------------------------------------------------- properties

ks = st.integers(min_value=0, max_value=K_MAX)
rs = st.floats(min_value=0.0, max_value=3.0, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(k=ks, r=rs)
def test_normalization_property(k, r):
    s = ladder_coefficients(k, SqueezeParams(r))
    assert abs(math.fsum(s.mags ** 2) - 1) <= 2 * s.tail_bound + 1e-12
    assert s.tail_bound < 1e-12


@settings(max_examples=60, deadline=None)
@given(k=ks, r=st.floats(min_value=0.01, max_value=3.0))
def test_ratio_recurrence_property(k, r):
    s = ladder_coefficients(k, SqueezeParams(r))
    n = np.arange(len(s) - 1)
    expected = math.tanh(r) * np.sqrt((n + k + 1) / (n + 1))
    np.testing.assert_allclose(s.mags[1:] / s.mags[:-1], expected, rtol=1e-13)


@settings(max_examples=30, deadline=None)
@given(k=ks, r=rs, theta=st.floats(min_value=-10, max_value=10))
def test_phase_independence_property(k, r, theta):
    a = ladder_coefficients(k, SqueezeParams(r, 0.0))
    b = ladder_coefficients(k, SqueezeParams(r, theta))
    assert np.array_equal(a.mags, b.mags)

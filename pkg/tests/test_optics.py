import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cbwave import optics
from cbwave.errors import InvalidArgument
from cbwave.optics import (apply, attenuation_matrix, bs_matrix, coupling_matrix, intensity,
                           is_unitary, matmul, mzi_matrix, phase_matrix)

angles = st.floats(-50.0, 50.0, allow_nan=False)
R = 1 / math.sqrt(2)


def test_bs_entries():
    m = bs_matrix()
    assert m[0, 0] == R + 0j
    assert m[0, 1] == 1j * R
    assert m[1, 0] == 1j * R and m[1, 1] == R
    assert is_unitary(m, 1e-15)


def test_bs_splits_evenly():
    out = apply(bs_matrix(), (1, 0))
    np.testing.assert_allclose(out, [R, 1j * R], atol=1e-15)
    np.testing.assert_allclose(intensity(out), [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("phi, diag", [(0.0, [1, 1]), (math.pi, [1, -1]), (math.pi / 2, [1, 1j])])
def test_phase_matrix(phi, diag):
    np.testing.assert_allclose(phase_matrix(phi), np.diag(diag), atol=1e-15)


@pytest.mark.parametrize("psi, diag", [(0.0, [1, 1]), (math.pi, [1, -1]), (2 * math.pi, [1, 1])])
def test_coupling_matrix(psi, diag):
    np.testing.assert_allclose(coupling_matrix(psi), np.diag(diag), atol=1e-15)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_nonfinite_phase_rejected(bad):
    for f in (phase_matrix, coupling_matrix, mzi_matrix):
        with pytest.raises(InvalidArgument):
            f(bad)


def test_attenuation():
    np.testing.assert_array_equal(attenuation_matrix(1, 1), np.eye(2))
    np.testing.assert_array_equal(apply(attenuation_matrix(0, 1), (0.3 + 0.1j, -0.2j)), [0, -0.2j])
    f = np.array([0.6 - 0.2j, 0.5j])
    out = apply(attenuation_matrix(0.8, 1), f)
    assert optics.total_power(out) == pytest.approx(0.64 * intensity(f[0]) + intensity(f[1]), abs=1e-15)
    for bad in ((-0.1, 1), (1, 1.2)):
        with pytest.raises(InvalidArgument):
            attenuation_matrix(*bad)


def test_matmul():
    m = mzi_matrix(0.7)
    np.testing.assert_array_equal(matmul(np.eye(2), m), m)
    # bs.bs worked by hand: (1/2)[[1 - 1, i + i], [i + i, -1 + 1]]
    np.testing.assert_allclose(matmul(bs_matrix(), bs_matrix()), [[0, 1j], [1j, 0]], atol=1e-15)
    np.testing.assert_allclose(matmul(phase_matrix(math.pi), phase_matrix(math.pi)), np.eye(2), atol=1e-15)


def test_mzi_limits():
    np.testing.assert_allclose(mzi_matrix(0), [[0, 1j], [1j, 0]], atol=1e-15)
    np.testing.assert_allclose(mzi_matrix(math.pi), [[1, 0], [0, -1]], atol=1e-15)


def test_mzi_quarter_wave_output():
    out = apply(mzi_matrix(math.pi / 2), (1, 0))
    np.testing.assert_allclose(out, [(1 - 1j) / 2, (1j - 1) / 2], atol=1e-15)
    np.testing.assert_allclose(intensity(out), [0.5, 0.5], atol=1e-15)


def test_intensity():
    assert intensity(1 + 0j) == 1
    assert intensity(0.5j) == 0.25
    assert intensity(R + 1j * R) == pytest.approx(1, abs=1e-15)


def test_is_unitary():
    assert is_unitary(bs_matrix(), 1e-12)
    assert not is_unitary(attenuation_matrix(0.5, 1), 1e-12)
    assert is_unitary(mzi_matrix(1.234), 1e-12)
    with pytest.raises(InvalidArgument):
        is_unitary(bs_matrix(), 0)


def test_matrices_are_read_only():
    with pytest.raises(ValueError):
        bs_matrix()[0, 0] = 2


@given(angles)
def test_mzi_closed_form_matches_product(phi):
    product = bs_matrix() @ phase_matrix(phi) @ bs_matrix()
    assert np.max(np.abs(mzi_matrix(phi) - product)) <= 1e-15


@given(angles, angles)
def test_lossless_elements_unitary(phi, psi):
    for m in (bs_matrix(), phase_matrix(phi), coupling_matrix(psi), mzi_matrix(phi)):
        assert is_unitary(m, 1e-12)


transmissions = st.one_of(st.just(1.0), st.floats(0, 1 - 1e-9))


@given(transmissions, transmissions)
def test_attenuation_unitary_only_when_transparent(a, b):
    assert is_unitary(attenuation_matrix(a, b), 1e-12) == (a == 1 and b == 1)


@given(angles, st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_unitary_conserves_power(phi, u, v):
    f = np.array([u, v])
    before = optics.total_power(f)
    after = optics.total_power(apply(mzi_matrix(phi) @ coupling_matrix(2 * phi), f))
    assert after == pytest.approx(before, abs=1e-12 * max(1.0, before))


def test_single_mzi_intensity_law(rng):
    e0 = 1.7 - 0.4j
    i0 = intensity(e0)
    for phi in rng.uniform(-20, 20, 1000):
        upper, lower = apply(mzi_matrix(phi), (e0, 0))
        assert abs(intensity(upper) - i0 / 2 * (1 - math.cos(phi))) <= 1e-12
        assert abs(intensity(lower) - i0 / 2 * (1 + math.cos(phi))) <= 1e-12

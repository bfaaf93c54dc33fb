import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state
from thetaphase.errors import DimensionError, DomainError, RepresentationError
from thetaphase.hilbert import (
    SpaceDim,
    StateVector,
    basis_state,
    dft,
    dft_matrix,
    discrete_orthogonality_check,
    idft,
    inner,
    is_hermitian,
)


def test_space_dim():
    assert SpaceDim(5).odd and SpaceDim(5).parity == "odd"
    assert SpaceDim(4).parity == "even"
    assert int(SpaceDim(9)) == 9
    for bad in (1, 0, -3, 2.5):
        with pytest.raises(DomainError):
            SpaceDim(bad)


def test_state_vector_is_read_only_and_tagged():
    s = StateVector([1, 2, 3])
    assert s.dim.m == 3 and len(s) == 3 and s.rep == "position"
    with pytest.raises(ValueError):
        s.amplitudes[0] = 5
    assert s.norm_squared() == pytest.approx(14.0)
    assert s.with_normalization().norm_squared() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DomainError):
        StateVector([1, 1], normalized=True)
    with pytest.raises(RepresentationError):
        StateVector([1, 1], rep="spin")


def test_basis_state():
    e = basis_state(5, 2)
    assert np.array_equal(np.asarray(e), [0, 0, 1, 0, 0])
    with pytest.raises(DomainError):
        basis_state(5, 5)


@pytest.mark.parametrize("M", [2, 3, 4, 5, 8, 11])
def test_dft_matrix_matches_definition(M):
    brute = np.array([[cmath.exp(-2j * math.pi * p * m / M) / math.sqrt(M) for m in range(M)] for p in range(M)])
    np.testing.assert_allclose(dft_matrix(M), brute, atol=1e-14)
    np.testing.assert_allclose(dft_matrix(M) @ dft_matrix(M).conj().T, np.eye(M), atol=1e-13)


@settings(max_examples=50, deadline=None)
@given(M=st.integers(2, 40), seed=st.integers(0, 2**32 - 1))
def test_dft_roundtrip_and_unitarity(M, seed):
    v = StateVector(random_state(M, np.random.default_rng(seed)))
    naive = dft(v)
    fast = dft(v, method="fft")
    assert naive.rep == "momentum"
    np.testing.assert_allclose(naive.amplitudes, fast.amplitudes, atol=1e-12)
    assert naive.norm_squared() == pytest.approx(1.0, abs=1e-12)
    back = idft(naive)
    np.testing.assert_allclose(back.amplitudes, v.amplitudes, atol=1e-12)
    np.testing.assert_allclose(idft(fast, method="fft").amplitudes, v.amplitudes, atol=1e-12)


def test_dft_of_basis_state_is_flat_phase():
    M, m0 = 7, 3
    out = dft(basis_state(M, m0)).amplitudes
    np.testing.assert_allclose(out, np.exp(-2j * np.pi * np.arange(M) * m0 / M) / math.sqrt(M), atol=1e-14)


def test_representation_tags_enforced():
    v = StateVector([1, 0, 0])
    with pytest.raises(RepresentationError):
        idft(v)
    with pytest.raises(RepresentationError):
        dft(dft(v))
    with pytest.raises(RepresentationError):
        inner(v, dft(v))
    with pytest.raises(DimensionError):
        inner(v, StateVector([1, 0]))
    with pytest.raises(ValueError):
        dft(v, method="bogus")


def test_inner_is_conjugate_linear_in_first_slot():
    a = StateVector([1j, 0])
    b = StateVector([1, 0])
    assert inner(a, b) == -1j


@settings(max_examples=60, deadline=None)
@given(M=st.integers(2, 30), n=st.integers(-100, 100), k=st.integers(-100, 100))
def test_discrete_orthogonality(M, n, k):
    assert discrete_orthogonality_check(M, n, k) == (M if (n - k) % M == 0 else 0)


def test_is_hermitian():
    assert is_hermitian(np.array([[1, 1j], [-1j, 2]]))
    assert not is_hermitian(np.array([[1, 1j], [1j, 2]]))
    assert not is_hermitian(np.ones((2, 3)))

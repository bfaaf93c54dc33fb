import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetaphase.coherent import (
    CoherentLabel,
    SqueezeParam,
    coherent_state,
    coherent_state_closed,
    coherent_state_momentum_closed,
    coherent_states,
    completeness_check,
    cs_overlap_asymptotic,
    cs_overlap_closed,
    vacuum,
    vacuum_momentum,
    vacuum_momentum_closed,
    vacuum_norm_asymptotic,
    vacuum_norm_closed,
    vacuum_norm_direct,
    vacuum_norm_forms,
)
from thetaphase.errors import DomainError, ParityError
from thetaphase.hilbert import dft
from thetaphase.hwgroup import displacement

DIMS = [3, 4, 5, 7, 15, 31]
MU0 = [0.3, 1.0, 3.0]


def brute_vacuum(M, mu, n_max=80):
    return np.array([math.fsum(math.exp(-mu * n * n) * math.cos(2 * n * math.pi * m / M) for n in range(-n_max, n_max + 1)) for m in range(M)])


def test_squeeze_param():
    sq = SqueezeParam.coherent(7)
    assert sq.is_vacuum_cs and sq.mu_prime == pytest.approx(sq.mu, rel=1e-14)
    assert SqueezeParam.from_mu0(7, 2.0).mu == pytest.approx(2 * math.pi / 7)
    assert not SqueezeParam.from_mu0(7, 2.0).is_vacuum_cs
    with pytest.raises(DomainError):
        SqueezeParam(0.0, 5)


def test_label_reduction():
    sq = SqueezeParam.coherent(5)
    assert CoherentLabel(7, -1, sq) == CoherentLabel(2, 4, sq)


@pytest.mark.parametrize("M", [3, 4, 7])
@pytest.mark.parametrize("mu0", MU0)
def test_vacuum_matches_brute(M, mu0):
    sq = SqueezeParam.from_mu0(M, mu0)
    brute = brute_vacuum(M, sq.mu)
    # the cosine sum cancels in the tails, so the oracle is only good to ulps of its peak
    np.testing.assert_allclose(np.asarray(vacuum(sq)).real, brute, rtol=1e-13, atol=1e-14 * brute.max())
    assert np.all(np.asarray(vacuum(sq)).real > 0)


@pytest.mark.parametrize("M", DIMS)
@pytest.mark.parametrize("mu0", MU0)
def test_norm_closed_forms(M, mu0):
    sq = SqueezeParam.from_mu0(M, mu0)
    direct = vacuum_norm_direct(sq)
    lattice, dual = vacuum_norm_forms(sq)
    assert lattice == pytest.approx(direct, rel=1e-11)
    assert dual == pytest.approx(direct, rel=1e-11)
    assert vacuum_norm_closed(sq) == lattice


def test_norm_asymptotic():
    sq = SqueezeParam.coherent(31)
    assert vacuum_norm_asymptotic(sq) == pytest.approx(vacuum_norm_direct(sq), rel=1e-6)


@pytest.mark.parametrize("M", [3, 4, 5, 8, 11])
@pytest.mark.parametrize("mu0", MU0)
def test_vacuum_momentum_closed(M, mu0):
    sq = SqueezeParam.from_mu0(M, mu0)
    np.testing.assert_allclose(vacuum_momentum(sq).amplitudes, vacuum_momentum_closed(sq).amplitudes, atol=1e-12 * math.sqrt(M))


def test_self_dual_vacuum_is_dft_invariant():
    sq = SqueezeParam.coherent(9)
    np.testing.assert_allclose(vacuum_momentum(sq).amplitudes, vacuum(sq).amplitudes, atol=1e-12)


@pytest.mark.parametrize("M", [3, 5, 7])
@pytest.mark.parametrize("mu0", MU0)
def test_coherent_state_closed_forms(M, mu0):
    sq = SqueezeParam.from_mu0(M, mu0)
    stack = coherent_states(sq)
    for m0, n0 in itertools.product(range(M), repeat=2):
        lab = CoherentLabel(m0, n0, sq)
        ref = coherent_state(lab)
        np.testing.assert_allclose(coherent_state_closed(lab).amplitudes, ref.amplitudes, atol=1e-12)
        np.testing.assert_allclose(stack[m0, n0], ref.amplitudes, atol=1e-12)
        np.testing.assert_allclose(coherent_state_momentum_closed(lab).amplitudes, dft(ref).amplitudes, atol=1e-12)


def test_coherent_state_even_refused():
    with pytest.raises(ParityError):
        coherent_state(CoherentLabel(1, 1, SqueezeParam.coherent(4)))


@pytest.mark.parametrize("M", [4, 5, 6, 7])
@pytest.mark.parametrize("mu0", MU0)
def test_overlap_closed_vs_direct(M, mu0):
    sq = SqueezeParam.from_mu0(M, mu0)
    vac = np.asarray(vacuum(sq))
    scale = vacuum_norm_direct(sq)
    for m0, n0 in itertools.product(range(M), repeat=2):
        direct = np.vdot(vac, displacement(M, m0, n0) @ vac)
        assert abs(direct.imag) < 1e-12 * scale
        closed = cs_overlap_closed(CoherentLabel(m0, n0, sq))
        assert closed == pytest.approx(direct.real, rel=1e-10, abs=1e-13 * scale)


def test_overlap_at_origin_is_norm():
    sq = SqueezeParam.coherent(11)
    assert cs_overlap_closed(CoherentLabel(0, 0, sq)) == pytest.approx(vacuum_norm_direct(sq), rel=1e-13)


def test_overlap_asymptotic():
    sq = SqueezeParam.coherent(31)
    vac = np.asarray(vacuum(sq))
    N = vacuum_norm_direct(sq)
    for m0, n0 in itertools.product(range(-3, 4), repeat=2):
        ratio = np.vdot(vac, displacement(31, m0, n0) @ vac).real / N
        assert cs_overlap_asymptotic(CoherentLabel(m0, n0, sq)) == pytest.approx(ratio, rel=1e-3)


def test_displaced_overlap_sign():
    # T(1,1) carries r^{[1/2]} = -r^{1/2}: the overlap is negative
    sq = SqueezeParam.coherent(5)
    assert cs_overlap_closed(CoherentLabel(1, 1, sq)) < 0


@pytest.mark.parametrize("M", [3, 5, 7])
@pytest.mark.parametrize("mu", [0.1, None, 5.0])
def test_completeness(M, mu):
    sq = SqueezeParam.coherent(M) if mu is None else SqueezeParam(mu, M)
    rep = completeness_check(sq)
    assert rep.ok, str(rep)


@settings(max_examples=30, deadline=None)
@given(M=st.sampled_from([3, 5, 7, 9]), mu=st.floats(0.05, 10.0))
def test_completeness_random_mu(M, mu):
    assert completeness_check(SqueezeParam(mu, M)).max_deviation < 1e-11


def test_completeness_is_thread_count_independent(monkeypatch):
    sq = SqueezeParam(0.7, 7)
    monkeypatch.setenv("THETA_PHASE_THREADS", "1")
    serial = completeness_check(sq).max_deviation
    monkeypatch.setenv("THETA_PHASE_THREADS", "4")
    assert completeness_check(sq).max_deviation == serial

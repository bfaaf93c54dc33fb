"""Identity battery run by ``thetaphase bridge-verify``."""

from __future__ import annotations

import numpy as np

from .coherent import SqueezeParam, completeness_check
from .errors import DeviationReport, require_odd
from .hwgroup import matrix_element_orthogonality
from .qbridge import bridge_kernel, q_from_w, q_function, relqw_check
from .wigner import exchange_check, overlap, phase_point_orthogonality, reconstruct, wigner_function

MAX_VERIFY_DIM = 31


def random_density_matrix(m_dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    a = rng.normal(size=(m_dim, rank or m_dim)) + 1j * rng.normal(size=(m_dim, rank or m_dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian(m_dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(m_dim, m_dim)) + 1j * rng.normal(size=(m_dim, m_dim))
    return (a + a.conj().T) / 2


def _overlap_report(M: int, rng: np.random.Generator, pairs: int = 20) -> DeviationReport:
    dev = 0.0
    for _ in range(pairs):
        A, B = random_hermitian(M, rng), random_hermitian(M, rng)
        exact = np.trace(A @ B).real
        dev = max(dev, abs(overlap(wigner_function(A), wigner_function(B)) - exact) / max(1.0, abs(exact)))
    return DeviationReport(f"overlap relation (M={M})", dev, 1e-10)


def _q_from_w_report(M: int, rng: np.random.Generator, states: int = 10) -> DeviationReport:
    kernel = bridge_kernel(M)
    dev = 0.0
    for _ in range(states):
        rho = random_density_matrix(M, rng, rank=1)
        direct = q_function(rho, kernel.squeeze).values
        smoothed = q_from_w(wigner_function(rho), kernel).values
        dev = max(dev, float(np.max(np.abs(direct - smoothed))))
    return DeviationReport(f"Q from W smoothing (M={M})", dev, 1e-10)


def _reconstruction_report(M: int, rng: np.random.Generator, states: int = 20) -> DeviationReport:
    dev = 0.0
    for _ in range(states):
        rho = random_density_matrix(M, rng)
        dev = max(dev, float(np.max(np.abs(reconstruct(wigner_function(rho)) - rho))))
    return DeviationReport(f"reconstruction roundtrip (M={M})", dev, 1e-11)


def identity_battery(m_dim: int, seed: int = 2024) -> list[DeviationReport]:
    require_odd(m_dim, "bridge verification")
    if m_dim > MAX_VERIFY_DIM:
        raise ValueError(f"bridge verification is limited to M <= {MAX_VERIFY_DIM}")
    rng = np.random.default_rng(seed)
    return [
        phase_point_orthogonality(m_dim),
        matrix_element_orthogonality(m_dim),
        completeness_check(SqueezeParam.coherent(m_dim)),
        _overlap_report(m_dim, rng),
        exchange_check(m_dim, seed=seed),
        relqw_check(m_dim),
        _q_from_w_report(m_dim, rng),
        _reconstruction_report(m_dim, rng),
    ]

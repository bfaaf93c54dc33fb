"""Q-function and its exact relation to the Wigner function (odd M, mu = pi/M).

The coherent-state projector expands over displacements with weight
``F(m, n)``::

    |q,p><q,p| = sum_{m,n} F(m, n) r^{pm - qn} T(m, n)

Inverting the Fourier relation between ``T`` and the phase-point operators
turns this into a cyclic convolution of the Wigner grid::

    Q(q, p) = sum_{a,b} K(q - a, p - b) W(a, b),
    K(a, b) = (1/M) sum_{m,n} F(m, n) r^{bm - an}

``F`` resums to the infinite-lattice Gaussian ``f(m, n)``, so ``K`` is a
periodized discrete Gaussian.  ``K`` is real but not positive: the
``(-1)^{mn}`` sign of ``f`` puts negative lobes near ``(M/2, M/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coherent import SqueezeParam, coherent_states, vacuum_norm_direct
from .errors import DeviationReport, DimensionError, DomainError, require_odd
from .hilbert import DimLike, SpaceDim, as_dim, is_hermitian
from .hwgroup import displacement_stack, half_mod
from .theta import theta
from .wigner import WignerGrid

__all__ = [
    "QGrid",
    "BridgeKernel",
    "q_function",
    "bridge_kernel",
    "bridge_f",
    "relqw_operator",
    "relqw_check",
    "single_variable_identities",
    "resummation_check",
    "q_from_w",
    "RESUM_RADIUS_FACTOR",
]

RESUM_RADIUS_FACTOR = 6


@dataclass(frozen=True)
class QGrid:
    values: np.ndarray
    mu: float
    normalization: str = "raw"

    def __post_init__(self) -> None:
        if self.normalization not in ("raw", "unit"):
            raise ValueError(f"normalization must be 'raw' or 'unit', got {self.normalization!r}")
        vals = np.array(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def m_dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class BridgeKernel:
    dim: SpaceDim
    squeeze: SqueezeParam
    F: np.ndarray
    K: np.ndarray

    @property
    def m_dim(self) -> int:
        return self.dim.m


def q_function(rho: np.ndarray, squeeze: SqueezeParam, normalization: str = "raw") -> QGrid:
    """``Q(q, p) = <q,p,mu| rho |q,p,mu>`` over the whole phase space.

    ``"raw"`` keeps the unnormalized coherent states; ``"unit"`` divides by
    ``N``, i.e. uses unit-norm coherent states.  Completeness then gives
    ``(1/M) sum Q_unit = Tr rho``, the same phase-space measure as the
    Wigner grid.
    """
    rho = np.asarray(rho, dtype=complex)
    M = squeeze.m_dim
    require_odd(M, "q_function")
    if rho.shape != (M, M):
        raise DimensionError(f"density matrix shape {rho.shape} does not match M={M}")
    scale = max(1.0, float(np.max(np.abs(rho))))
    if not is_hermitian(rho, 1e-12 * scale):
        raise DomainError("density matrix is not Hermitian")
    if np.min(np.linalg.eigvalsh(rho)) < -1e-10 * scale:
        raise DomainError("density matrix is not positive semidefinite")
    states = coherent_states(squeeze)
    q = np.einsum("abi,ij,abj->ab", states.conj(), rho, states).real
    if normalization == "unit":
        q = q / vacuum_norm_direct(squeeze)
    return QGrid(q, squeeze.mu, normalization)


@lru_cache(maxsize=64)
def _bridge_kernel(m_dim: int) -> BridgeKernel:
    sq = SqueezeParam.coherent(m_dim)
    mu, mup = sq.mu, sq.mu_prime
    idx = np.arange(m_dim)
    x = np.pi * idx / m_dim
    y = np.pi * np.array([half_mod(m_dim, n) for n in idx]) / m_dim
    t3, t2 = theta(3, x, 2 * mu), theta(2, x, 2 * mu)
    d3, d4 = theta(3, y, mup / 2), theta(4, y, mup / 2)
    sign = np.where(idx % 2, -1.0, 1.0)
    F = math.sqrt(mup / (2 * math.pi)) * (np.outer(t3, d3) + np.outer(sign * t2, d4))
    F = F.astype(complex)
    # K(a, b) = (1/M) sum_{m,n} F(m,n) r^{bm - an}
    dft = np.exp(2j * np.pi * (np.outer(idx, idx) % m_dim) / m_dim)
    K_c = (dft @ F @ dft.conj()).T / m_dim
    residue = float(np.max(np.abs(K_c.imag)))
    if residue > 1e-12 * float(np.max(np.abs(K_c))):
        raise ArithmeticError(f"bridge kernel K has imaginary residue {residue:.3e}")
    K = K_c.real.copy()
    F.setflags(write=False)
    K.setflags(write=False)
    return BridgeKernel(sq.dim, sq, F, K)


def bridge_kernel(dim: DimLike) -> BridgeKernel:
    """Cached ``F`` and ``K`` for odd M at the self-dual squeeze ``mu = pi/M``."""
    M = as_dim(dim).m
    require_odd(M, "bridge_kernel")
    return _bridge_kernel(M)


def bridge_f(dim: DimLike, m, n):
    """Infinite-lattice weight ``f(m,n) = sqrt(pi/2mu) (-1)^{mn} exp(-mu' m^2/2 - mu n^2/2)``."""
    sq = SqueezeParam.coherent(dim)
    m = np.asarray(m)
    n = np.asarray(n)
    sign = np.where((m * n) % 2, -1.0, 1.0)
    return math.sqrt(math.pi / (2 * sq.mu)) * sign * np.exp(-sq.mu_prime * m**2 / 2 - sq.mu * n**2 / 2)


def relqw_operator(kernel: BridgeKernel, q: int, p: int) -> np.ndarray:
    """``sum_{m,n} T(m,n) F(m,n) r^{pm - qn}``; equals ``|q,p><q,p|``."""
    M = kernel.m_dim
    idx = np.arange(M)
    phase = np.exp(2j * np.pi * ((p * idx[:, None] - q * idx[None, :]) % M) / M)
    return np.einsum("mn,mnkl->kl", kernel.F * phase, displacement_stack(M))


def relqw_check(dim: DimLike) -> DeviationReport:
    """Entrywise deviation of the displacement expansion from the dense CS projectors."""
    M = as_dim(dim).m
    kernel = bridge_kernel(M)
    states = coherent_states(kernel.squeeze)
    idx = np.arange(M)
    # all (q, p) at once: coefficients [(q,p), (m,n)] times T stack [(m,n), (k,l)]
    coeff = np.exp(
        2j * np.pi * ((idx[None, :, None, None] * idx[None, None, :, None]
                       - idx[:, None, None, None] * idx[None, None, None, :]) % M) / M
    ) * kernel.F[None, None, :, :]
    ops = coeff.reshape(M * M, M * M) @ displacement_stack(M).reshape(M * M, M * M)
    proj = np.einsum("abk,abl->abkl", states, states.conj()).reshape(M * M, M * M)
    dev = float(np.max(np.abs(ops - proj)))
    return DeviationReport(f"displacement expansion of CS projectors (M={M})", dev, 1e-10)


def _lattice(M: int) -> np.ndarray:
    radius = RESUM_RADIUS_FACTOR * M
    return np.arange(-radius, radius + 1)


def single_variable_identities(dim: DimLike, phi, mu: float | None = None) -> dict[str, float]:
    """Relative deviations of the five one-variable resummation formulas.

    Each sums ``phi`` against a Gaussian over the integers (truncated at
    ``|n| <= 6M``) and compares with the period sum against a theta function
    of the dual modulus.  ``phi`` is a length-M periodic sequence.
    """
    M = as_dim(dim).m
    require_odd(M, "single_variable_identities")
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (M,):
        raise DimensionError(f"test function must have {M} entries")
    sq = SqueezeParam(mu if mu is not None else math.pi / M, M)
    mu, mup = sq.mu, sq.mu_prime
    n = _lattice(M)
    m = np.arange(M)
    z = np.pi * m / M
    zh = np.pi * np.array([half_mod(M, k) for k in m]) / M
    pref = math.sqrt(mup / math.pi)
    sign_n = np.where(n % 2, -1.0, 1.0)
    sign_m = np.where(m % 2, -1.0, 1.0)
    gauss = np.exp(-mu * n**2)
    gauss_half = np.exp(-mu * (n - M / 2) ** 2)
    pairs = {
        "theta3": (np.sum(phi[n % M] * gauss), pref * np.sum(phi * theta(3, z, mup))),
        "theta2": (np.sum(sign_n * phi[n % M] * gauss), pref * np.sum(sign_m * phi * theta(2, z, mup))),
        "theta4": (np.sum(phi[n % M] * gauss_half), pref * np.sum(phi * theta(4, z, mup))),
        "theta3_doubled": (np.sum(phi[(2 * n) % M] * gauss), pref * np.sum(phi * theta(3, zh, mup))),
        "theta4_doubled": (np.sum(phi[(2 * n) % M] * gauss_half), pref * np.sum(phi * theta(4, zh, mup))),
    }
    out = {}
    for name, (lattice_sum, period_sum) in pairs.items():
        scale = max(abs(lattice_sum), abs(period_sum), 1e-300)
        out[name] = float(abs(lattice_sum - period_sum) / scale)
    return out


def resummation_check(dim: DimLike, test_function) -> float:
    """``|sum_period phi F - sum_Z2 phi f| / sum_period |phi F|`` for a periodic M x M ``phi``."""
    M = as_dim(dim).m
    require_odd(M, "resummation_check")
    phi = np.asarray(test_function, dtype=complex)
    if phi.shape != (M, M):
        raise DimensionError(f"test function must be {M}x{M}")
    kernel = bridge_kernel(M)
    period = np.sum(phi * kernel.F)
    n = _lattice(M)
    mm, nn = np.meshgrid(n, n, indexing="ij")
    lattice = np.sum(phi[mm % M, nn % M] * bridge_f(M, mm, nn))
    return float(abs(period - lattice) / np.sum(np.abs(phi * kernel.F)))


def q_from_w(w: WignerGrid, kernel: BridgeKernel, method: str = "direct") -> QGrid:
    """Raw Q grid as the cyclic convolution of ``W`` with ``K``.

    ``method="direct"`` sums the M^2 shifted copies of ``W``;
    ``method="fft"`` multiplies 2D spectra.
    """
    M = w.m_dim
    if M != kernel.m_dim:
        raise DimensionError(f"grid M={M} does not match kernel M={kernel.m_dim}")
    require_odd(M, "q_from_w")
    if not w.is_real:
        raise DomainError("q_from_w expects the real Wigner grid of a Hermitian operator")
    W = w.values
    if method == "direct":
        q = np.zeros((M, M))
        for a in range(M):
            for b in range(M):
                q += kernel.K[a, b] * np.roll(W, (a, b), axis=(0, 1))
    elif method == "fft":
        q = np.fft.ifft2(np.fft.fft2(kernel.K) * np.fft.fft2(W)).real
    else:
        raise ValueError(f"unknown method {method!r}")
    return QGrid(q, kernel.squeeze.mu, "raw")

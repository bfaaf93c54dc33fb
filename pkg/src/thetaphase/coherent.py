"""Discrete (squeezed) coherent states generated from the theta vacuum.

The vacuum ``Theta(m) = Theta_3(pi m / M | mu)`` is a periodic Gaussian of
width set by ``mu``; ``mu = pi/M`` is the unsqueezed, self-dual point where
position and momentum widths coincide.  States are kept unnormalized with
squared norm ``N`` (:func:`vacuum_norm_closed`), which is what the
completeness relation and the Q-function carry explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from .errors import DeviationReport, DomainError, require_odd
from .hilbert import DimLike, SpaceDim, StateVector, as_dim, dft
from .hwgroup import displacement, half_mod
from .theta import theta, theta_null

__all__ = [
    "SqueezeParam",
    "CoherentLabel",
    "vacuum",
    "vacuum_momentum",
    "vacuum_momentum_closed",
    "vacuum_norm_closed",
    "vacuum_norm_forms",
    "vacuum_norm_direct",
    "vacuum_norm_asymptotic",
    "coherent_state",
    "coherent_state_closed",
    "coherent_state_momentum_closed",
    "coherent_states",
    "cs_overlap_closed",
    "cs_overlap_asymptotic",
    "completeness_check",
]


@dataclass(frozen=True)
class SqueezeParam:
    mu: float
    dim: SpaceDim

    def __post_init__(self) -> None:
        object.__setattr__(self, "dim", as_dim(self.dim))
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise DomainError(f"mu must be positive, got {self.mu!r}")
        object.__setattr__(self, "mu", float(self.mu))

    @classmethod
    def coherent(cls, dim: DimLike) -> "SqueezeParam":
        """Unsqueezed vacuum, ``mu = pi / M``."""
        dim = as_dim(dim)
        return cls(math.pi / dim.m, dim)

    @classmethod
    def from_mu0(cls, dim: DimLike, mu0: float) -> "SqueezeParam":
        dim = as_dim(dim)
        return cls(mu0 * math.pi / dim.m, dim)

    @property
    def m_dim(self) -> int:
        return self.dim.m

    @property
    def mu_prime(self) -> float:
        return math.pi**2 / (self.mu * self.dim.m**2)

    @property
    def is_vacuum_cs(self) -> bool:
        return abs(self.mu - math.pi / self.dim.m) <= 1e-14


@dataclass(frozen=True)
class CoherentLabel:
    m0: int
    n0: int
    squeeze: SqueezeParam

    def __post_init__(self) -> None:
        M = self.squeeze.m_dim
        object.__setattr__(self, "m0", self.m0 % M)
        object.__setattr__(self, "n0", self.n0 % M)


def _vacuum_amplitudes(squeeze: SqueezeParam) -> np.ndarray:
    M = squeeze.m_dim
    return theta(3, np.pi * np.arange(M) / M, squeeze.mu)


def vacuum(squeeze: SqueezeParam) -> StateVector:
    """Position amplitudes ``Theta_3(pi m / M | mu)``, real and positive, norm^2 ``N``."""
    return StateVector(_vacuum_amplitudes(squeeze), "position")


def vacuum_norm_direct(squeeze: SqueezeParam) -> float:
    return float(np.sum(_vacuum_amplitudes(squeeze) ** 2))


def vacuum_norm_forms(squeeze: SqueezeParam) -> tuple[float, float]:
    """Both closed forms of ``N = <Theta|Theta>``.

    The first uses theta-nulls at ``2 mu`` and ``2 mu M^2`` (or ``mu M^2/2``),
    the second their Poisson images expressed through ``mu'``.
    """
    M, mu, mup = squeeze.m_dim, squeeze.mu, squeeze.mu_prime
    t3 = theta_null(3, 2 * mu)
    if M % 2:
        t2 = theta_null(2, 2 * mu)
        lattice = M * (t3 * theta_null(3, 2 * mu * M**2) + t2 * theta_null(2, 2 * mu * M**2))
        dual = math.sqrt(2 * math.pi / mu) * (t3 * theta_null(3, mup / 2) + t2 * theta_null(4, mup / 2)) / 2
    else:
        lattice = M * t3 * theta_null(3, mu * M**2 / 2)
        dual = math.sqrt(2 * math.pi / mu) * t3 * theta_null(3, 2 * mup)
    return lattice, dual


def vacuum_norm_closed(squeeze: SqueezeParam) -> float:
    return vacuum_norm_forms(squeeze)[0]


def vacuum_norm_asymptotic(squeeze: SqueezeParam) -> float:
    """Large-M limit ``M sqrt(pi / (2 mu))``."""
    return squeeze.m_dim * math.sqrt(math.pi / (2 * squeeze.mu))


def vacuum_momentum(squeeze: SqueezeParam) -> StateVector:
    return dft(vacuum(squeeze))


def vacuum_momentum_closed(squeeze: SqueezeParam) -> StateVector:
    """``<p|Theta> = sqrt(pi / (mu M)) Theta_3(pi p / M | mu')``."""
    M = squeeze.m_dim
    amps = math.sqrt(math.pi / (squeeze.mu * M)) * theta(3, np.pi * np.arange(M) / M, squeeze.mu_prime)
    return StateVector(amps, "momentum")


def coherent_state(label: CoherentLabel) -> StateVector:
    """``|m0, n0, mu> = T(m0, n0) |Theta_mu>`` (odd M)."""
    sq = label.squeeze
    require_odd(sq.m_dim, "coherent_state")
    return StateVector(displacement(sq.dim, label.m0, label.n0) @ _vacuum_amplitudes(sq), "position")


def coherent_state_closed(label: CoherentLabel) -> StateVector:
    """``r^{n0 (m - [m0/2])} Theta(m - m0)``, built without any matrix product."""
    sq = label.squeeze
    M = sq.m_dim
    require_odd(M, "coherent_state_closed")
    m = np.arange(M)
    vac = _vacuum_amplitudes(sq)
    phase = np.exp(2j * np.pi * ((label.n0 * (m - half_mod(M, label.m0))) % M) / M)
    return StateVector(phase * vac[(m - label.m0) % M], "position")


def coherent_state_momentum_closed(label: CoherentLabel) -> StateVector:
    """``sqrt(M) r^{-(p - [n0/2]) m0} sum_k exp(-mu (p - n0 - kM)^2)``."""
    sq = label.squeeze
    M = sq.m_dim
    require_odd(M, "coherent_state_momentum_closed")
    p = np.arange(M)
    # periodized Gaussian in p via the dual theta
    gauss = math.sqrt(math.pi / (sq.mu * M)) * theta(3, np.pi * ((p - label.n0) % M) / M, sq.mu_prime)
    phase = np.exp(-2j * np.pi * (((p - half_mod(M, label.n0)) * label.m0) % M) / M)
    return StateVector(phase * gauss, "momentum")


def coherent_states(squeeze: SqueezeParam) -> np.ndarray:
    """All coherent states as an ``(M, M, M)`` array indexed ``[m0, n0, m]``."""
    M = squeeze.m_dim
    require_odd(M, "coherent_states")
    vac = _vacuum_amplitudes(squeeze)
    m = np.arange(M)
    out = np.empty((M, M, M), dtype=complex)
    for m0 in range(M):
        shifted = vac[(m - m0) % M]
        h = half_mod(M, m0)
        for n0 in range(M):
            out[m0, n0] = np.exp(2j * np.pi * ((n0 * (m - h)) % M) / M) * shifted
    return out


def _centered(k: int, M: int) -> int:
    k %= M
    return k - M if k > M // 2 else k


def cs_overlap_closed(label: CoherentLabel) -> float:
    """Vacuum expectation ``<Theta| T(m0, n0) |Theta>`` from theta products.

    The textbook product formulas describe the naive displacement
    ``r^{mn/2} T_x^m T_p^n``; ``T`` differs from it by ``(-1)^{m0 n0}``,
    which is applied here.
    """
    sq = label.squeeze
    M, mu, mup = sq.m_dim, sq.mu, sq.mu_prime
    m0, n0 = label.m0, label.n0
    x = math.pi * m0 / M
    if M % 2 == 0:
        alpha = 3 if n0 % 2 == 0 else 2
        beta = 3 if m0 % 2 == 0 else 2
        value = M * math.sqrt(2 * mup / math.pi) * theta(alpha, x, 2 * mu) * theta(beta, math.pi * n0 / M, 2 * mup)
    else:
        y = math.pi * n0 / (2 * M)
        sign_m = -1.0 if m0 % 2 else 1.0
        t3, t2 = theta(3, x, 2 * mu), theta(2, x, 2 * mu)
        d3, d4 = theta(3, y, mup / 2), theta(4, y, mup / 2)
        if n0 % 2 == 0:
            value = t3 * d3 + sign_m * t2 * d4
        else:
            value = sign_m * t3 * d4 + t2 * d3
        value *= M * math.sqrt(mup / (2 * math.pi))
    return value * (-1.0 if (m0 * n0) % 2 else 1.0)


def cs_overlap_asymptotic(label: CoherentLabel) -> float:
    """Large-M prediction of ``<Theta|m0,n0> / N``: a Gaussian in the centered labels.

    Accurate only up to ``O(exp(-mu M^2 / 2))``; never substituted for
    :func:`cs_overlap_closed`.
    """
    sq = label.squeeze
    M = sq.m_dim
    m0, n0 = _centered(label.m0, M), _centered(label.n0, M)
    sign = -1.0 if (m0 * n0) % 2 else 1.0
    return sign * math.exp(-(sq.mu_prime * m0**2 + sq.mu * n0**2) / 2)


def completeness_check(squeeze: SqueezeParam) -> DeviationReport:
    """Max entrywise deviation of ``(1/(M N)) sum |m0,n0><m0,n0|`` from the identity.

    The sum over the M^2 unnormalized states is ``M N`` times the identity,
    for every ``mu``.
    """
    M = squeeze.m_dim
    require_odd(M, "completeness_check")
    states = coherent_states(squeeze)

    def row_sum(m0: int) -> np.ndarray:
        block = states[m0]
        return block.T @ block.conj()

    partial = np.stack(parallel_map(row_sum, range(M)))
    total = np.sum(partial, axis=0) / (M * vacuum_norm_direct(squeeze))
    dev = float(np.max(np.abs(total - np.eye(M))))
    return DeviationReport(f"completeness (M={M}, mu={squeeze.mu:.4g})", dev, 1e-11)

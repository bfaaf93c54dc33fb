"""Finite state space of an M-point periodic signal.

Position amplitudes ``f(m)`` and momentum amplitudes ``f(p)`` are related by
the unitary DFT with kernel ``<p|m> = exp(-2 pi i p m / M) / sqrt(M)``.
Operators are plain ``(M, M)`` complex numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .errors import DimensionError, DomainError, RepresentationError

__all__ = [
    "SpaceDim",
    "StateVector",
    "OperatorMatrix",
    "as_dim",
    "basis_state",
    "dft",
    "idft",
    "dft_matrix",
    "inner",
    "discrete_orthogonality_check",
    "is_hermitian",
]

Rep = Literal["position", "momentum"]
OperatorMatrix = np.ndarray


@dataclass(frozen=True)
class SpaceDim:
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or self.m < 2:
            raise DomainError(f"dimension M must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def parity(self) -> str:
        return "odd" if self.odd else "even"

    def __int__(self) -> int:
        return self.m


DimLike = Union[SpaceDim, int]


def as_dim(dim: DimLike) -> SpaceDim:
    return dim if isinstance(dim, SpaceDim) else SpaceDim(dim)


@dataclass(frozen=True)
class StateVector:
    """Length-M amplitude vector tagged with its representation."""

    amplitudes: np.ndarray
    rep: Rep = "position"
    normalized: bool = False
    dim: SpaceDim = field(init=False)

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dim", SpaceDim(amps.size))
        if self.rep not in ("position", "momentum"):
            raise RepresentationError(f"unknown representation {self.rep!r}")
        if self.normalized and abs(self.norm_squared() - 1.0) > 1e-12:
            raise DomainError("state flagged normalized but sum |f|^2 != 1")

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __len__(self) -> int:
        return self.dim.m

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def with_normalization(self) -> "StateVector":
        return StateVector(self.amplitudes / math.sqrt(self.norm_squared()), self.rep, normalized=True)


def basis_state(dim: DimLike, m0: int) -> StateVector:
    dim = as_dim(dim)
    if not 0 <= m0 < dim.m:
        raise DomainError(f"basis index {m0} out of range 0..{dim.m - 1}")
    amps = np.zeros(dim.m, dtype=complex)
    amps[m0] = 1.0
    return StateVector(amps, "position", normalized=True)


def dft_matrix(dim: DimLike) -> np.ndarray:
    """Dense kernel ``<p|m>``; phases taken from exact integer products ``p*m mod M``."""
    m = as_dim(dim).m
    k = np.arange(m)
    return np.exp(-2j * np.pi * (np.outer(k, k) % m) / m) / math.sqrt(m)


def dft(state: StateVector, method: str = "naive") -> StateVector:
    """Position -> momentum representation.

    ``method="naive"`` is the O(M^2) reference product with the dense kernel;
    ``method="fft"`` uses numpy's FFT (same sign convention, orthonormal scaling).
    """
    if state.rep != "position":
        raise RepresentationError("dft expects a position-representation state")
    if method == "naive":
        out = dft_matrix(state.dim) @ state.amplitudes
    elif method == "fft":
        out = np.fft.fft(state.amplitudes, norm="ortho")
    else:
        raise ValueError(f"unknown method {method!r}")
    return StateVector(out, "momentum")


def idft(state: StateVector, method: str = "naive") -> StateVector:
    if state.rep != "momentum":
        raise RepresentationError("idft expects a momentum-representation state")
    if method == "naive":
        out = dft_matrix(state.dim).conj().T @ state.amplitudes
    elif method == "fft":
        out = np.fft.ifft(state.amplitudes, norm="ortho")
    else:
        raise ValueError(f"unknown method {method!r}")
    return StateVector(out, "position")


def inner(a: StateVector, b: StateVector) -> complex:
    """``<a|b> = sum conj(a_m) b_m``."""
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim.m} vs {b.dim.m}")
    if a.rep != b.rep:
        raise RepresentationError(f"representation mismatch: {a.rep} vs {b.rep}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def discrete_orthogonality_check(dim: DimLike, n: int, k: int) -> int:
    """Evaluate ``sum_m exp(2 pi i m (n-k) / M)`` and round it.

    The result is ``M`` when ``n == k (mod M)`` and ``0`` otherwise.
    """
    m_dim = as_dim(dim).m
    m = np.arange(m_dim)
    total = np.sum(np.exp(2j * np.pi * ((m * (n - k)) % m_dim) / m_dim))
    rounded = int(round(total.real))
    if abs(total - rounded) > 1e-10 * m_dim:
        raise ArithmeticError(f"orthogonality sum {total} is not near an integer")
    return rounded


def is_hermitian(op: np.ndarray, tol: float = 1e-12) -> bool:
    op = np.asarray(op)
    return op.ndim == 2 and op.shape[0] == op.shape[1] and bool(np.max(np.abs(op - op.conj().T)) <= tol)

"""Discrete Wigner operator and Wigner function on the M x M phase space.

The phase-point operator at ``(q, p)`` is the 2D discrete Fourier transform
of the displacement operators::

    W(q, p) = (1/M) sum_{m,n} r^{pm - qn} T(m, n)
    <k| W(q, p) |l> = r^{p(k - l)} delta_{k + l = 2q (mod M)}

The closed matrix-element form is the production path; the Fourier sum is
kept as :func:`wigner_operator_fourier` for cross-checks.  Grids are indexed
``values[q, p]`` with ``q`` position-like.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DeviationReport, DimensionError, require_odd
from .hilbert import DimLike, as_dim, is_hermitian
from .hwgroup import displacement_stack

__all__ = [
    "WignerGrid",
    "wigner_operator",
    "wigner_operator_fourier",
    "wigner_operators",
    "phase_point_orthogonality",
    "wigner_function",
    "overlap",
    "exchange_operator",
    "exchange_check",
    "reconstruct",
    "calibrate_reconstruction_constant",
    "wigner_spectrum",
]


@dataclass(frozen=True)
class WignerGrid:
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise DimensionError(f"Wigner grid must be square, got shape {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def m_dim(self) -> int:
        return self.values.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)


def wigner_operator(dim: DimLike, q: int, p: int) -> np.ndarray:
    M = as_dim(dim).m
    q %= M
    p %= M
    k = np.arange(M)
    l = (2 * q - k) % M
    out = np.zeros((M, M), dtype=complex)
    out[k, l] = np.exp(2j * np.pi * ((p * (k - l)) % M) / M)
    return out


def wigner_operator_fourier(dim: DimLike, q: int, p: int) -> np.ndarray:
    """Reference O(M^4) construction from the displacement operators (odd M)."""
    M = as_dim(dim).m
    require_odd(M, "wigner_operator_fourier")
    m = np.arange(M)
    coeff = np.exp(2j * np.pi * ((p * m[:, None] - q * m[None, :]) % M) / M)
    return np.einsum("mn,mnkl->kl", coeff, displacement_stack(M)) / M


@lru_cache(maxsize=32)
def _wigner_stack(m_dim: int) -> np.ndarray:
    stack = np.empty((m_dim, m_dim, m_dim, m_dim), dtype=complex)
    for q in range(m_dim):
        for p in range(m_dim):
            stack[q, p] = wigner_operator(m_dim, q, p)
    stack.setflags(write=False)
    return stack


def wigner_operators(dim: DimLike) -> np.ndarray:
    """Read-only ``(M, M, M, M)`` stack indexed ``[q, p, k, l]``."""
    return _wigner_stack(as_dim(dim).m)


def phase_point_orthogonality(dim: DimLike) -> DeviationReport:
    """``Tr(W(q,p) W(q1,p1)) = M delta delta`` over all pairs of points."""
    M = as_dim(dim).m
    require_odd(M, "phase_point_orthogonality")
    stack = wigner_operators(M)
    flat = stack.reshape(M * M, M * M)
    swapped = stack.transpose(0, 1, 3, 2).reshape(M * M, M * M)
    gram = flat @ swapped.T
    dev = float(np.max(np.abs(gram - M * np.eye(M * M))))
    return DeviationReport(f"phase-point orthogonality (M={M})", dev, 1e-11)


def wigner_function(op: np.ndarray) -> WignerGrid:
    """Grid of ``Tr(W(q, p) A)``.

    A Hermitian ``A`` yields a real grid; anything else a complex one.
    """
    A = np.asarray(op, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"operator must be square, got shape {A.shape}")
    M = A.shape[0]
    k = np.arange(M)
    p = np.arange(M)
    grid = np.empty((M, M), dtype=complex)
    for q in range(M):
        l = (2 * q - k) % M
        # Tr(W A) = sum_k r^{p(k-l)} A[l, k]
        phases = np.exp(2j * np.pi * ((np.outer(p, k - l)) % M) / M)
        grid[q] = phases @ A[l, k]
    if is_hermitian(A, 1e-12 * max(1.0, float(np.max(np.abs(A))))):
        residue = float(np.max(np.abs(grid.imag)))
        if residue > 1e-12 * max(1.0, float(np.max(np.abs(grid.real)))):
            raise ArithmeticError(f"Wigner grid of a Hermitian operator has imaginary residue {residue:.3e}")
        return WignerGrid(grid.real.copy())
    return WignerGrid(grid)


def _same_dim(a: WignerGrid, b: WignerGrid) -> int:
    if a.m_dim != b.m_dim:
        raise DimensionError(f"grid dimension mismatch: {a.m_dim} vs {b.m_dim}")
    return a.m_dim


def overlap(a: WignerGrid, b: WignerGrid):
    """``(1/M) sum_{q,p} W_A W_B``, equal to ``Tr(A B)`` for odd M."""
    M = _same_dim(a, b)
    require_odd(M, "overlap")
    val = np.sum(a.values * b.values) / M
    return float(val.real) if a.is_real and b.is_real else complex(val)


def exchange_operator(dim: DimLike) -> np.ndarray:
    """``sigma = (1/M) sum W(q,p) (x) W(q,p)`` as an ``(M^2, M^2)`` matrix.

    Tensor index of ``|i>_1 |j>_2`` is ``i*M + j``.
    """
    M = as_dim(dim).m
    require_odd(M, "exchange_operator")
    flat = wigner_operators(M).reshape(M * M, M * M)  # [x, (i,k)]
    gram = (flat.T @ flat).reshape(M, M, M, M)  # [i, k, j, l]
    return gram.transpose(0, 2, 1, 3).reshape(M * M, M * M) / M


def exchange_check(dim: DimLike, pairs: int = 20, seed: int = 0) -> DeviationReport:
    M = as_dim(dim).m
    if M > 31:
        raise ValueError("exchange_check is limited to M <= 31")
    sigma = exchange_operator(M)
    swap = np.eye(M * M).reshape(M, M, M, M).transpose(0, 1, 3, 2).reshape(M * M, M * M)
    dev = float(np.max(np.abs(sigma - swap)))
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        f = rng.normal(size=M) + 1j * rng.normal(size=M)
        g = rng.normal(size=M) + 1j * rng.normal(size=M)
        dev = max(dev, float(np.max(np.abs(sigma @ np.kron(f, g) - np.kron(g, f)))))
    return DeviationReport(f"exchange operator (M={M})", dev, 1e-11)


def _reconstruct_with(grid: WignerGrid, constant: float) -> np.ndarray:
    return constant * np.einsum("qp,qpkl->kl", grid.values, wigner_operators(grid.m_dim))


def reconstruct(grid: WignerGrid) -> np.ndarray:
    """Operator with the given Wigner grid: ``(1/M) sum W(q,p) W_op(q,p)``.

    Even M is refused: the even-M phase-point operators only see ``k + l``
    even, so half of the matrix elements never reach the grid.
    """
    M = grid.m_dim
    require_odd(M, "reconstruct")
    return _reconstruct_with(grid, 1.0 / M)


def calibrate_reconstruction_constant(dim: DimLike, seed: int = 0) -> float:
    """Least-squares ``c`` with ``rho = c * sum W_rho(q,p) W(q,p)`` for a random density matrix."""
    M = as_dim(dim).m
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(M, M)) + 1j * rng.normal(size=(M, M))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    raw = _reconstruct_with(wigner_function(rho), 1.0)
    return float((np.vdot(raw, rho) / np.vdot(raw, raw)).real)


def wigner_spectrum(dim: DimLike) -> Counter:
    """Eigenvalue multiset of ``W(0, 0)`` (the inversion ``|m> -> |-m>``)."""
    eig = np.linalg.eigvalsh(wigner_operator(dim, 0, 0))
    rounded = np.rint(eig).astype(int)
    if np.max(np.abs(eig - rounded)) > 1e-10:
        raise ArithmeticError("W(0,0) has eigenvalues other than +-1")
    return Counter(int(v) for v in rounded)

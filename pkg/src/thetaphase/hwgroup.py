"""Discrete Heisenberg-Weyl group on Z_M x Z_M.

Group elements ``g(s, m, n) = w^s T_x^m T_p^n`` carry their central phase as
an integer exponent ``s`` of ``w = exp(i pi / M)`` (half the step of
``r = exp(2 pi i / M)``), which keeps the ``(-1)^{mn}`` sign of the even-M
displacement exact.  Floating point enters only when a dense matrix is built.

    T_x |m> = |m+1>,   T_p |m> = r^m |m>,   T_p T_x = r T_x T_p
    T(m, n) = r^{[mn/2]} T_x^m T_p^n           (odd M, [.] = half_mod)
    T(m, n) = (-1)^{mn} r^{mn/2} T_x^m T_p^n    (even M, 0 <= m, n < M)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DeviationReport, require_odd
from .hilbert import DimLike, as_dim

__all__ = [
    "GroupElement",
    "PhasePoint",
    "half_mod",
    "translation_x",
    "translation_p",
    "displacement",
    "displacement_element",
    "displacement_stack",
    "compose_labels",
    "adjoint_action",
    "matrix_element_orthogonality",
]


@lru_cache(maxsize=64)
def _half_step_table(m_dim: int) -> np.ndarray:
    # w^j for j in 0..2M-1; identical exponents always map to identical floats
    table = np.exp(1j * np.pi * np.arange(2 * m_dim) / m_dim)
    table.setflags(write=False)
    return table


def half_mod(dim: DimLike, m: int) -> int:
    """The unique ``x`` in ``0..M-1`` with ``2x = m (mod M)``, M odd."""
    m_dim = as_dim(dim).m
    require_odd(m_dim, "half_mod")
    m %= m_dim
    return m // 2 if m % 2 == 0 else (m + m_dim) // 2


@dataclass(frozen=True)
class PhasePoint:
    m_dim: int
    q: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.q % self.m_dim)
        object.__setattr__(self, "p", self.p % self.m_dim)


@dataclass(frozen=True)
class GroupElement:
    """``w^s T_x^m T_p^n`` with ``w = exp(i pi / M)``; ``s`` mod 2M, ``m, n`` mod M."""

    m_dim: int
    s: int
    m: int
    n: int

    def __post_init__(self) -> None:
        M = self.m_dim
        object.__setattr__(self, "s", self.s % (2 * M))
        object.__setattr__(self, "m", self.m % M)
        object.__setattr__(self, "n", self.n % M)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if other.m_dim != self.m_dim:
            raise ValueError("group elements of different dimension")
        # T_p^{n1} T_x^{m2} = r^{n1 m2} T_x^{m2} T_p^{n1}
        return GroupElement(
            self.m_dim,
            self.s + other.s + 2 * self.n * other.m,
            self.m + other.m,
            self.n + other.n,
        )

    def inverse(self) -> "GroupElement":
        # (T_x^m T_p^n)^{-1} = T_p^{-n} T_x^{-m} = r^{nm} T_x^{-m} T_p^{-n}
        return GroupElement(self.m_dim, -self.s + 2 * self.m * self.n, -self.m, -self.n)

    def matrix(self) -> np.ndarray:
        M = self.m_dim
        table = _half_step_table(M)
        l = np.arange(M)
        out = np.zeros((M, M), dtype=complex)
        out[(l + self.m) % M, l] = table[(self.s + 2 * self.n * l) % (2 * M)]
        return out


def translation_x(dim: DimLike) -> np.ndarray:
    """Cyclic shift ``|m> -> |m+1>``, i.e. ``f(m) -> f(m-1)``."""
    return GroupElement(as_dim(dim).m, 0, 1, 0).matrix()


def translation_p(dim: DimLike) -> np.ndarray:
    """Diagonal ``|m> -> r^m |m>``."""
    return GroupElement(as_dim(dim).m, 0, 0, 1).matrix()


def displacement_element(dim: DimLike, m: int, n: int) -> GroupElement:
    """Group label of the displacement operator ``T(m, n)``.

    For odd M the phase exponent ``mn(M+1)`` (units of pi/M) equals
    ``2 [mn/2]``; for even M it realizes ``(-1)^{mn} r^{mn/2}`` on the
    canonical labels.
    """
    M = as_dim(dim).m
    m %= M
    n %= M
    return GroupElement(M, m * n * (M + 1), m, n)


def displacement(dim: DimLike, m: int, n: int) -> np.ndarray:
    """Dense ``T(m, n)``: ``<k|T(m,n)|l> = r^{nl + [nm/2]} delta_{k, l+m}``."""
    return displacement_element(dim, m, n).matrix()


@lru_cache(maxsize=32)
def _displacement_stack(m_dim: int) -> np.ndarray:
    stack = np.empty((m_dim, m_dim, m_dim, m_dim), dtype=complex)
    for m in range(m_dim):
        for n in range(m_dim):
            stack[m, n] = displacement(m_dim, m, n)
    stack.setflags(write=False)
    return stack


def displacement_stack(dim: DimLike) -> np.ndarray:
    """All ``T(m, n)`` as a read-only ``(M, M, M, M)`` array indexed ``[m, n, k, l]``."""
    return _displacement_stack(as_dim(dim).m)


def compose_labels(a: tuple[int, int], b: tuple[int, int], dim: DimLike) -> tuple[int, int, int]:
    """Label algebra of ``T(a) T(b) = r^e T(a + b)``.

    Returns ``(e, m, n)`` with ``e = [(m_b n_a - n_b m_a) / 2] mod M``.
    """
    M = as_dim(dim).m
    require_odd(M, "compose_labels")
    (m2, n2), (m1, n1) = a, b
    return half_mod(M, m1 * n2 - n1 * m2), (m1 + m2) % M, (n1 + n2) % M


def adjoint_action(g: tuple[int, int], target: tuple[int, int], dim: DimLike) -> int:
    """Exponent ``e = pm - qn mod M`` in ``T(q,p) T(m,n) T(q,p)^+ = r^e T(m,n)``."""
    M = as_dim(dim).m
    require_odd(M, "adjoint_action")
    (q, p), (m, n) = g, target
    return (p * m - q * n) % M


def matrix_element_orthogonality(dim: DimLike) -> DeviationReport:
    """Check ``sum_{m,n} <a|T|b> conj(<d|T|c>) = M delta_ad delta_bc`` over all a, b, c, d."""
    M = as_dim(dim).m
    require_odd(M, "matrix_element_orthogonality")
    flat = displacement_stack(M).reshape(M * M, M * M)  # rows (m,n), cols (a,b)
    gram = (flat.T @ flat.conj()).reshape(M, M, M, M)  # [a, b, d, c]
    eye = np.eye(M)
    expected = M * np.einsum("ad,bc->abdc", eye, eye)
    dev = float(np.max(np.abs(gram - expected)))
    return DeviationReport(f"matrix-element orthogonality (M={M})", dev, 1e-11 * M)

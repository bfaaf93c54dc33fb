r"""Jacobi theta functions :math:`\Theta_k(z|\mu)`, k = 1..4.

Conventions (real decay parameter ``mu > 0``, quasiperiod ``i*mu``)::

    Theta_3(z|mu) = sum_n exp(-2inz - mu n^2)
    Theta_4(z|mu) = sum_n (-1)^n exp(-2inz - mu n^2)
    Theta_2(z|mu) = sum_n exp(-2i(n+1/2)z - mu (n+1/2)^2)
    Theta_1(z|mu) = i sum_n (-1)^n exp(-2i(n+1/2)z - mu (n+1/2)^2)

so that ``Theta_1(z) = Theta_2(z - pi/2)`` and all four are real for real z.
Each series has a Poisson-transformed twin, a sum of Gaussians of width
``sqrt(mu)`` centred on the lattice ``pi*k`` (or ``pi*(k+1/2)``).  For
``mu < 1`` the Gaussian sum converges faster and does not cancel, so
:func:`theta_eval` switches to it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "ThetaArg",
    "DualModulus",
    "PoissonDual",
    "theta_eval",
    "theta",
    "theta_null",
    "theta_series",
    "poisson_dual",
    "CROSSOVER_MU",
]

CROSSOVER_MU = 1.0
_REL_CUTOFF = 1e-17
_MAX_WINDOW = 10**6
_IMAG_RESIDUE = 1e-13


@dataclass(frozen=True)
class ThetaArg:
    kind: int
    z: float
    mu: float

    def __post_init__(self) -> None:
        _check(self.kind, self.mu)


@dataclass(frozen=True)
class DualModulus:
    """The momentum-space decay ``mu' = pi^2 / (mu M^2)`` paired with ``mu``."""

    mu: float
    m_dim: int

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu!r}")
        if self.m_dim < 1:
            raise DomainError(f"M must be positive, got {self.m_dim!r}")

    @property
    def mu_prime(self) -> float:
        return math.pi**2 / (self.mu * self.m_dim**2)


@dataclass(frozen=True)
class PoissonDual:
    """``Theta_kind(z|mu) = exp(log_prefactor) * Theta_dual_kind(dual_z|dual_mu)``.

    ``dual_z`` is purely imaginary for real ``z``; the prefactor is kept in
    log form because ``exp(-z^2/mu)`` underflows for small ``mu``.
    """

    kind: int
    dual_z: complex
    dual_mu: float
    log_prefactor: complex

    @property
    def prefactor(self) -> complex:
        return cmath.exp(self.log_prefactor)

    def evaluate(self) -> complex:
        # Fold the prefactor into each term's exponent so neither factor overflows.
        return _sum_window(
            lambda idx: self.log_prefactor + _direct_exponents(self.kind, self.dual_z, self.dual_mu, idx),
            _direct_center(self.dual_z, self.dual_mu),
        )[0]


def _check(kind: int, mu: float) -> None:
    if kind not in (1, 2, 3, 4):
        raise DomainError(f"theta kind must be 1, 2, 3 or 4, got {kind!r}")
    if not (isinstance(mu, (int, float, np.floating, np.integer)) and mu > 0 and math.isfinite(mu)):
        raise DomainError(f"mu must be a positive real number, got {mu!r}")


def _direct_exponents(kind: int, z: complex, mu: float, idx: np.ndarray) -> np.ndarray:
    if kind in (3, 4):
        ex = -2j * idx * z - mu * idx**2
        if kind == 4:
            ex = ex + 1j * math.pi * idx
        return ex
    h = idx + 0.5
    ex = -2j * h * z - mu * h**2
    if kind == 1:
        ex = ex + 1j * math.pi * (idx + 0.5)
    return ex


def _poisson_exponents(kind: int, z: complex, mu: float, idx: np.ndarray) -> np.ndarray:
    centre = math.pi * (idx + 0.5) if kind in (1, 4) else math.pi * idx
    ex = -((z - centre) ** 2) / mu + 0.5 * math.log(math.pi / mu)
    if kind in (1, 2):
        ex = ex + 1j * math.pi * idx
    return ex


def _direct_center(z: complex, mu: float) -> int:
    # |exp(-2inz - mu n^2)| peaks at n = Im(z)/mu
    return int(round(complex(z).imag / mu))


def _poisson_center(z: complex) -> int:
    return int(round(complex(z).real / math.pi))


def _sum_window(exponents, center: int) -> tuple[complex, float]:
    """Sum ``exp(exponents(idx))`` over a symmetric window, doubling it until
    the edge terms drop below ``1e-17`` of the accumulated magnitude.

    Returns the sum and the sum of absolute term values (the scale against
    which cancellation is judged).
    """
    half = 4
    while half <= _MAX_WINDOW:
        idx = np.arange(center - half, center + half + 1, dtype=float)
        ex = exponents(idx)
        terms = np.exp(ex)
        mags = np.exp(ex.real)
        scale = float(np.sum(mags))
        edge = max(mags[0], mags[-1])
        if edge < _REL_CUTOFF * scale or scale == 0.0:
            return complex(np.sum(terms)), scale
        half *= 2
    raise ConvergenceError(f"theta series did not converge within {_MAX_WINDOW} terms")


def theta_series(kind: int, z: complex, mu: float, form: str = "auto") -> complex:
    """Complex-argument evaluation of ``Theta_kind(z|mu)``.

    ``form`` selects the defining sum (``"direct"``), the Gaussian sum
    (``"poisson"``) or the conditioning-based choice (``"auto"``).  The result
    is returned as a complex number without any reality check.
    """
    return _theta_with_scale(kind, z, mu, form)[0]


def _theta_with_scale(kind: int, z: complex, mu: float, form: str) -> tuple[complex, float]:
    _check(kind, mu)
    if form == "auto":
        form = "poisson" if mu < CROSSOVER_MU else "direct"
    if form == "direct":
        return _sum_window(lambda idx: _direct_exponents(kind, z, mu, idx), _direct_center(z, mu))
    if form == "poisson":
        return _sum_window(lambda idx: _poisson_exponents(kind, z, mu, idx), _poisson_center(z))
    raise ValueError(f"unknown form {form!r}")


def theta_eval(arg: ThetaArg) -> float:
    """Evaluate ``Theta_kind(z|mu)`` for real ``z``.

    Examples
    --------
    >>> round(theta_eval(ThetaArg(3, 0.0, 4.0)), 10)
    1.0366315028
    """
    value, scale = _theta_with_scale(arg.kind, float(arg.z), float(arg.mu), "auto")
    if abs(value.imag) > _IMAG_RESIDUE * max(abs(value), scale):
        raise ConvergenceError(
            f"imaginary residue {value.imag:.3e} for real argument exceeds tolerance (Theta_{arg.kind})"
        )
    return value.real


def theta(kind: int, z, mu: float):
    """Array-friendly front end to :func:`theta_eval` for real ``z``."""
    z_arr = np.asarray(z, dtype=float)
    if z_arr.ndim == 0:
        return theta_eval(ThetaArg(kind, float(z_arr), mu))
    out = np.empty(z_arr.shape)
    for i, zi in np.ndenumerate(z_arr):
        out[i] = theta_eval(ThetaArg(kind, float(zi), mu))
    return out


def theta_null(kind: int, mu: float) -> float:
    """Theta-null ``theta_k(mu) = Theta_k(0|mu)``; ``theta_1`` vanishes identically."""
    _check(kind, mu)
    if kind == 1:
        return 0.0
    return theta_eval(ThetaArg(kind, 0.0, mu))


_DUAL_KIND = {1: 1, 2: 4, 3: 3, 4: 2}


def poisson_dual(arg: ThetaArg) -> PoissonDual:
    """Modular (Poisson) transform ``mu -> pi^2/mu`` of a theta argument.

    ``Theta_3 <-> Theta_3``, ``Theta_2 <-> Theta_4`` and ``Theta_1 -> Theta_1``
    with a factor ``-i``.  The real part of ``z`` is first reduced into
    ``[-pi/2, pi/2)`` (with the sign picked up by kinds 1 and 2) so the
    Gaussian prefactor stays well conditioned.
    """
    z = float(arg.z)
    j = math.floor(z / math.pi + 0.5)
    z -= j * math.pi
    log_pref = 0.5 * math.log(math.pi / arg.mu) - z * z / arg.mu + 0j
    if arg.kind in (1, 2) and j % 2:
        log_pref += 1j * math.pi
    if arg.kind == 1:
        log_pref -= 0.5j * math.pi
    return PoissonDual(
        kind=_DUAL_KIND[arg.kind],
        dual_z=1j * math.pi * z / arg.mu,
        dual_mu=math.pi**2 / arg.mu,
        log_prefactor=log_pref,
    )

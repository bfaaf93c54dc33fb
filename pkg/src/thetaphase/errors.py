"""Exception types and the small report record shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass


class ThetaPhaseError(Exception):
    """Base class for all library errors."""


class DomainError(ThetaPhaseError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(ThetaPhaseError, ArithmeticError):
    pass


class ParityError(ThetaPhaseError, ValueError):
    """Operation is only defined for odd dimension M."""


class RepresentationError(ThetaPhaseError, ValueError):
    pass


class DimensionError(ThetaPhaseError, ValueError):
    pass


def require_odd(m_dim: int, what: str) -> None:
    if m_dim % 2 == 0:
        raise ParityError(f"{what} requires odd M (got M={m_dim})")


@dataclass(frozen=True)
class DeviationReport:
    """Maximum deviation of a checked identity against its tolerance."""

    name: str
    max_deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)

    def __str__(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: max deviation {self.max_deviation:.3e} (tol {self.tolerance:.0e})"

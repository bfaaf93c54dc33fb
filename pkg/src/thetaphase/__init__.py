"""Discrete Wigner and Q quasiprobability distributions on an M x M phase space."""

__version__ = "0.1.0"

from .coherent import (  # noqa: E402
    CoherentLabel,
    SqueezeParam,
    coherent_state,
    completeness_check,
    cs_overlap_closed,
    vacuum,
    vacuum_norm_closed,
)
from .hilbert import SpaceDim, StateVector, basis_state, dft, idft, inner  # noqa: E402
from .hwgroup import GroupElement, displacement, half_mod  # noqa: E402
from .qbridge import QGrid, bridge_kernel, q_from_w, q_function  # noqa: E402
from .theta import ThetaArg, theta, theta_eval, theta_null  # noqa: E402
from .wigner import WignerGrid, reconstruct, wigner_function, wigner_operator  # noqa: E402

__all__ = [
    "CoherentLabel",
    "GroupElement",
    "QGrid",
    "SpaceDim",
    "SqueezeParam",
    "StateVector",
    "ThetaArg",
    "WignerGrid",
    "basis_state",
    "bridge_kernel",
    "coherent_state",
    "completeness_check",
    "cs_overlap_closed",
    "dft",
    "displacement",
    "half_mod",
    "idft",
    "inner",
    "q_from_w",
    "q_function",
    "reconstruct",
    "theta",
    "theta_eval",
    "theta_null",
    "vacuum",
    "vacuum_norm_closed",
    "wigner_function",
    "wigner_operator",
]

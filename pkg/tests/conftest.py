import math

import mpmath
import numpy as np
import pytest

from thetaphase.theta import CROSSOVER_MU, _direct_exponents, _poisson_exponents, _theta_with_scale

EPS = np.finfo(float).eps
# PASS/FAIL lines from the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def mp_theta(kind, z, mu, dps=160):
    """Independent high-precision theta via mpmath's nome form, q = exp(-mu).

    Enough digits are carried to survive the cancellation of the q -> 1 series.
    """
    with mpmath.workdps(dps):
        return complex(mpmath.jtheta(kind, mpmath.mpmathify(z), mpmath.exp(-mpmath.mpf(mu))))


def brute_theta(kind, z, mu, n_max=60):
    """Defining series summed in plain Python over |n| <= n_max."""
    total = 0j
    for n in range(-n_max, n_max + 1):
        if kind in (3, 4):
            term = np.exp(-2j * n * z - mu * n * n)
            total += term * ((-1) ** n if kind == 4 else 1)
        else:
            h = n + 0.5
            term = np.exp(-2j * h * z - mu * h * h)
            total += term * (1j * (-1) ** n if kind == 1 else 1)
    return total


def random_density(M, rng, rank=None):
    a = rng.normal(size=(M, rank or M)) + 1j * rng.normal(size=(M, rank or M))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_state(M, rng):
    v = rng.normal(size=M) + 1j * rng.normal(size=M)
    return v / np.linalg.norm(v)


def theta_floor(kind, z, mu, form=None):
    """Rounding floor of the summed series at ``z``.

    A few ulps of ``sum |terms|`` plus the error from rounding ``z`` itself
    (``eps (|z| + pi) sum |d term / dz|``), which dominates near zeros.
    """
    form = form or ("poisson" if mu < CROSSOVER_MU else "direct")
    _, scale = _theta_with_scale(kind, z, mu, form)
    if form == "direct":
        center = round(complex(z).imag / mu)
        idx = np.arange(center - 200, center + 201, dtype=float)
        ex = _direct_exponents(kind, z, mu, idx)
        slope = 2 * np.abs(idx + (0.5 if kind in (1, 2) else 0.0))
    else:
        center = round(complex(z).real / math.pi)
        idx = np.arange(center - 200, center + 201, dtype=float)
        ex = _poisson_exponents(kind, z, mu, idx)
        centre = math.pi * (idx + 0.5) if kind in (1, 4) else math.pi * idx
        slope = 2 * np.abs(z - centre) / mu
    dscale = float(np.sum(np.exp(ex.real) * slope))
    return 8 * EPS * (scale + (abs(z) + math.pi) * dscale) + 1e-300


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

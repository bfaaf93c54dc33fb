"""Text formats for signals, phase-space grids and density matrices, plus rendering.

Signal files hold one ``re im`` pair (or a bare ``re``) per line, ``#``
comments and optional ``dim=`` / ``label=`` header lines.  Grid files start
with ``key=value`` header lines followed by M rows of M values; numbers are
written with 17 significant digits so identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ThetaPhaseError

GRID_KINDS = ("wigner", "q", "kernel_F", "kernel_K", "density")
_ORDERS = {"wigner": "qp", "q": "qp", "kernel_F": "mn", "kernel_K": "ab", "density": "kl"}
_RAMP = " .:-=+*#%@"


class ParseError(ThetaPhaseError):
    """Malformed input file; the message carries line number or byte offset."""


class InputContractError(ThetaPhaseError, ValueError):
    """Well-formed input that violates a command's preconditions."""


@dataclass
class SignalFile:
    samples: np.ndarray
    declared_dim: int | None = None
    label: str = ""


@dataclass
class GridFile:
    kind: str
    values: np.ndarray
    mu: float | None = None
    normalization: str = "none"
    extra: dict[str, str] = field(default_factory=dict)

    @property
    def m_dim(self) -> int:
        return self.values.shape[0]

    @property
    def order(self) -> str:
        return _ORDERS[self.kind]


def parse_signal(text: str) -> SignalFile:
    samples: list[complex] = []
    declared = None
    label = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, value = (s.strip() for s in line.partition("="))
            if key == "dim":
                try:
                    declared = int(value)
                except ValueError:
                    raise ParseError(f"line {lineno}: bad dim value {value!r}") from None
                if declared < 1:
                    raise ParseError(f"line {lineno}: dim must be positive")
            elif key == "label":
                label = value
            else:
                raise ParseError(f"line {lineno}: unknown header key {key!r}")
            continue
        parts = line.split()
        if len(parts) not in (1, 2):
            raise ParseError(f"line {lineno}: expected 're im', got {len(parts)} fields")
        try:
            re_, im_ = float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse number in {raw.strip()!r}") from None
        if not (math.isfinite(re_) and math.isfinite(im_)):
            raise InputContractError(f"line {lineno}: non-finite sample")
        samples.append(complex(re_, im_))
    if not samples:
        raise ParseError("signal file contains no samples")
    if declared is not None and declared != len(samples):
        raise InputContractError(f"dim={declared} declared but {len(samples)} samples found")
    return SignalFile(np.array(samples, dtype=complex), declared, label)


def read_signal(path: str | Path) -> SignalFile:
    return parse_signal(Path(path).read_text(encoding="utf-8"))


def _fmt_real(v: float) -> str:
    return f"{v:.17g}"


def _fmt_complex(v: complex) -> str:
    return f"{v.real:.17g}{v.imag:+.17g}j"


def format_grid(grid: GridFile) -> str:
    values = np.asarray(grid.values)
    is_complex = np.iscomplexobj(values)
    mu = "none" if grid.mu is None else _fmt_real(grid.mu)
    lines = [
        "# thetaphase grid",
        f"kind={grid.kind}",
        f"M={grid.m_dim}",
        f"mu={mu}",
        f"normalization={grid.normalization}",
        f"order={grid.order}",
        f"dtype={'complex' if is_complex else 'real'}",
    ]
    lines += [f"{k}={v}" for k, v in sorted(grid.extra.items())]
    lines.append(f"version={__version__}")
    fmt = _fmt_complex if is_complex else _fmt_real
    for row in values:
        lines.append(" ".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_grid(path: str | Path, grid: GridFile) -> None:
    Path(path).write_bytes(format_grid(grid).encode("utf-8"))


def parse_grid(data: bytes) -> GridFile:
    header: dict[str, str] = {}
    rows: list[list] = []
    offset = 0
    m_dim = None
    is_complex = False
    for lineno, raw in enumerate(data.splitlines(keepends=True), start=1):
        start = offset
        offset += len(raw)
        try:
            line = raw.decode("utf-8").split("#", 1)[0].strip()
        except UnicodeDecodeError:
            raise ParseError(f"line {lineno} (byte offset {start}): not valid UTF-8") from None
        if not line:
            continue
        if m_dim is None:
            if "=" not in line:
                raise ParseError(f"line {lineno} (byte offset {start}): data row before M= header")
            key, _, value = (s.strip() for s in line.partition("="))
            header[key] = value
            if key == "M":
                try:
                    m_dim = int(value)
                except ValueError:
                    raise ParseError(f"line {lineno} (byte offset {start}): bad M value {value!r}") from None
            continue
        if "=" in line:
            if rows:
                raise ParseError(f"line {lineno} (byte offset {start}): header line after data rows")
            key, _, value = (s.strip() for s in line.partition("="))
            header[key] = value
            continue
        is_complex = header.get("dtype", "real") == "complex"
        tokens = line.split()
        if len(tokens) != m_dim:
            raise ParseError(
                f"line {lineno} (byte offset {start}): expected {m_dim} values, found {len(tokens)}"
            )
        try:
            rows.append([complex(t) if is_complex else float(t) for t in tokens])
        except ValueError:
            raise ParseError(f"line {lineno} (byte offset {start}): unparseable value") from None
        if len(rows) > m_dim:
            raise ParseError(f"line {lineno} (byte offset {start}): more than M={m_dim} rows")
    if m_dim is None:
        raise ParseError(f"byte offset {offset}: missing M= header")
    if "kind" not in header or header["kind"] not in GRID_KINDS:
        raise ParseError(f"missing or unknown kind= header ({header.get('kind')!r})")
    if len(rows) != m_dim:
        raise ParseError(f"byte offset {offset}: truncated file, expected {m_dim} rows, found {len(rows)}")
    mu = header.get("mu", "none")
    known = {"kind", "M", "mu", "normalization", "order", "dtype", "version"}
    return GridFile(
        kind=header["kind"],
        values=np.array(rows, dtype=complex if is_complex else float),
        mu=None if mu == "none" else float(mu),
        normalization=header.get("normalization", "none"),
        extra={k: v for k, v in header.items() if k not in known},
    )


def read_grid(path: str | Path) -> GridFile:
    return parse_grid(Path(path).read_bytes())


def _scaled(values: np.ndarray) -> tuple[np.ndarray, bool]:
    """Min-max scale to [0, 1]; a constant grid maps to 0.5 and is flagged."""
    v = np.asarray(values, dtype=float)
    lo, hi = float(v.min()), float(v.max())
    if hi - lo <= 1e-15 * max(1.0, abs(hi)):
        return np.full(v.shape, 0.5), True
    return (v - lo) / (hi - lo), False


def render_pgm(values: np.ndarray) -> tuple[bytes, bool]:
    """Binary 8-bit PGM, one pixel per cell, ``q`` down the rows."""
    scaled, degenerate = _scaled(values)
    pixels = np.rint(scaled * 255).astype(np.uint8)
    rows, cols = pixels.shape
    return f"P5\n{cols} {rows}\n255\n".encode("ascii") + pixels.tobytes(), degenerate


def render_ascii(values: np.ndarray) -> tuple[str, bool]:
    scaled, degenerate = _scaled(values)
    levels = np.minimum((scaled * len(_RAMP)).astype(int), len(_RAMP) - 1)
    return "\n".join("".join(_RAMP[i] for i in row) for row in levels) + "\n", degenerate

"""``thetaphase`` command-line interface.

Exit codes: 0 success, 1 tolerance failure, 2 input contract violation,
3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coherent import SqueezeParam
from .errors import DomainError, ParityError
from .gridio import (
    GridFile,
    InputContractError,
    ParseError,
    format_grid,
    read_grid,
    read_signal,
    render_ascii,
    render_pgm,
)
from .hilbert import is_hermitian
from .qbridge import bridge_kernel, q_function
from .verify import MAX_VERIFY_DIM, identity_battery
from .wigner import WignerGrid, reconstruct, wigner_function

log = logging.getLogger("thetaphase")

EXIT_OK, EXIT_TOLERANCE, EXIT_CONTRACT, EXIT_IO = 0, 1, 2, 3
MU0_RANGE = (0.1, 10.0)


def _emit(text: str | bytes, output: str | None) -> None:
    data = text.encode("utf-8") if isinstance(text, str) else text
    if output is None or output == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(output).write_bytes(data)


def _load_state(args) -> np.ndarray:
    signal = read_signal(args.signal)
    samples = signal.samples
    if samples.size % 2 == 0:
        if not args.pad_to_odd:
            raise InputContractError(
                f"{samples.size} samples: the phase-space pipeline needs an odd count (use --pad-to-odd)"
            )
        log.warning("even sample count %d padded with one zero sample", samples.size)
        samples = np.append(samples, 0.0)
    norm = float(np.linalg.norm(samples))
    if norm == 0.0:
        raise InputContractError("signal is identically zero")
    if not args.no_normalize:
        samples = samples / norm
    return samples


def signal_wigner_grid(samples: np.ndarray) -> GridFile:
    w = wigner_function(np.outer(samples, samples.conj()))
    return GridFile("wigner", w.values)


def signal_q_grid(samples: np.ndarray, mu0: float = 1.0, raw: bool = False) -> GridFile:
    sq = SqueezeParam.from_mu0(samples.size, mu0)
    q = q_function(np.outer(samples, samples.conj()), sq, "raw" if raw else "unit")
    return GridFile("q", q.values, mu=sq.mu, normalization=q.normalization)


def cmd_wigner(args) -> int:
    samples = _load_state(args)
    grid = signal_wigner_grid(samples)
    M = samples.size
    w = grid.values
    _emit(format_grid(grid), args.output)
    print(f"normalization (1/M) sum W   = {np.sum(w) / M:.15f}", file=sys.stderr)
    print(f"purity        (1/M) sum W^2 = {np.sum(w * w) / M:.15f}", file=sys.stderr)
    return EXIT_OK


def cmd_q(args) -> int:
    lo, hi = MU0_RANGE
    if not lo <= args.mu0 <= hi:
        raise InputContractError(f"--mu0 must lie in [{lo}, {hi}], got {args.mu0}")
    samples = _load_state(args)
    _emit(format_grid(signal_q_grid(samples, args.mu0, args.raw)), args.output)
    return EXIT_OK


def cmd_kernel(args) -> int:
    kernel = bridge_kernel(args.dim)
    if args.which == "F":
        grid = GridFile("kernel_F", np.asarray(kernel.F), mu=kernel.squeeze.mu)
    else:
        grid = GridFile("kernel_K", np.asarray(kernel.K), mu=kernel.squeeze.mu)
    _emit(format_grid(grid), args.output)
    return EXIT_OK


def cmd_bridge_verify(args) -> int:
    M = args.dim
    if M % 2 == 0:
        raise ParityError(f"bridge-verify requires odd M (got M={M}); the W-Q bridge is defined for odd M only")
    if not 3 <= M <= MAX_VERIFY_DIM:
        raise InputContractError(f"bridge-verify supports odd 3 <= M <= {MAX_VERIFY_DIM}")
    reports = identity_battery(M)
    for rep in reports:
        print(rep)
    failed = [r for r in reports if not r.ok]
    print(f"{len(reports) - len(failed)}/{len(reports)} identities within tolerance")
    return EXIT_TOLERANCE if failed else EXIT_OK


def cmd_reconstruct(args) -> int:
    grid = read_grid(args.grid)
    if grid.kind != "wigner":
        raise InputContractError(f"expected a wigner grid, got kind={grid.kind}")
    if np.iscomplexobj(grid.values):
        raise InputContractError("reconstruct expects a real Wigner grid")
    rho = reconstruct(WignerGrid(grid.values))
    _emit(format_grid(GridFile("density", rho)), args.output)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    print(f"hermiticity max|rho - rho^+| = {herm:.3e}", file=sys.stderr)
    print(f"trace                        = {np.trace(rho).real:.15f}", file=sys.stderr)
    if not is_hermitian(rho, 1e-10):
        log.warning("reconstructed operator is not Hermitian")
    return EXIT_OK


def cmd_render(args) -> int:
    grid = read_grid(args.grid)
    values = np.asarray(grid.values)
    if np.iscomplexobj(values):
        values = np.abs(values)
    if args.center:
        values = np.roll(values, (values.shape[0] // 2, values.shape[1] // 2), axis=(0, 1))
    if args.format == "pgm":
        out, degenerate = render_pgm(values)
    else:
        out, degenerate = render_ascii(values)
    if degenerate:
        log.warning("constant grid rendered as uniform mid-gray")
    _emit(out, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thetaphase", description="Discrete Wigner and Q phase-space tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def signal_args(p):
        p.add_argument("signal", help="signal file: one 're im' pair per line")
        p.add_argument("-o", "--output", help="output grid file (default: stdout)")
        p.add_argument("--pad-to-odd", action="store_true", help="append a zero sample to even-length input")
        p.add_argument("--no-normalize", action="store_true", help="keep the signal's own norm")

    p = sub.add_parser("wigner", help="Wigner grid of a sampled signal")
    signal_args(p)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("q", help="Q grid of a sampled signal")
    signal_args(p)
    p.add_argument("--mu0", type=float, default=1.0, help="squeezing in units of pi/M (default 1)")
    p.add_argument("--raw", action="store_true", help="unnormalized coherent states")
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("kernel", help="export the bridge kernel F or K")
    p.add_argument("dim", type=int)
    p.add_argument("--which", choices=("F", "K"), default="K")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("bridge-verify", help="run the identity battery for odd M")
    p.add_argument("dim", type=int)
    p.set_defaults(func=cmd_bridge_verify)

    p = sub.add_parser("reconstruct", help="density matrix from a Wigner grid")
    p.add_argument("grid")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("render", help="render a grid as PGM or ASCII")
    p.add_argument("grid")
    p.add_argument("--format", choices=("pgm", "ascii"), default="pgm")
    p.add_argument("--center", action="store_true", help="move the origin to the middle of the image")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputContractError, ParityError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())

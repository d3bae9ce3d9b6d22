"""Command-line front end.

Every subcommand reads matrices as inline JSON or as a path to a JSON file
(``{"dim": n, "entries": [[...], ...]}``) and wave functions / symbols as CSV
files (``x,re,im`` and ``x,p,re,im``).  Results go to stdout or ``--out``.

Exit status: 0 on success, 2 when a residual check ran but exceeded the
tolerance, 1 on any input or validation error (a JSON object with ``error``
and ``message`` is printed on stderr).
"""

import argparse
import sys

import numpy as np

from . import gaussian as gs
from . import symplectic as sp
from .errors import WigcovError
from .io import (
    dumps,
    matrix_from_json,
    matrix_to_json,
    phasespace_from_csv,
    phasespace_to_csv,
    wavefunction_from_csv,
    wavefunction_to_csv,
)
from .phasespace import (
    Grid,
    PhaseSpaceFunction,
    WaveFunction,
    antisymplectic_covariance_check,
    covariance_check,
    weyl_apply,
    weyl_covariance_check,
    weyl_pairing_check,
    wigner,
)
from .phasespace.checks import CheckResult

DEFAULT_TOL = 1e-8

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK_FAILED = 2


class InputError(WigcovError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read_text(source):
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source!r}: {exc.strerror}") from None


def load_matrix(source):
    """Matrix from inline JSON or from a file containing it."""
    text = source.strip()
    if not text.startswith("{"):
        text = _read_text(source)
    return matrix_from_json(text)


def _grid_from_x(x, hbar):
    N = len(x)
    if N < 2:
        raise InputError("need at least two samples")
    dx = x[1] - x[0]
    grid = Grid(N, N * dx, hbar)
    if not np.allclose(x, grid.x, rtol=0, atol=1e-9 * max(1.0, grid.L)):
        raise InputError("sample positions must be x_k = (k - N/2) dx")
    return grid


def load_state(source, hbar):
    x, samples = wavefunction_from_csv(_read_text(source))
    return WaveFunction(_grid_from_x(x, hbar), samples)


def load_symbol(source, hbar):
    x, p, samples = phasespace_from_csv(_read_text(source))
    grid = _grid_from_x(x, hbar)
    if len(p) != grid.N or not np.allclose(p, grid.p, rtol=0, atol=1e-9 * max(1.0, len(p) * grid.dp)):
        raise InputError("momentum samples do not match the position grid")
    return PhaseSpaceFunction(grid, samples)


def _emit(args, text, binary=None):
    if binary is not None:
        np.save(args.out, binary)
        return
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    if args.format != "json":
        raise InputError(f"subcommand {args.command!r} only supports --format json")
    _emit(args, dumps(obj) + "\n")


def _emit_state(args, psi):
    if args.format == "csv":
        _emit(args, wavefunction_to_csv(psi.grid.x, psi.samples))
    else:
        obj = {
            "x": psi.grid.x.tolist(),
            "re": psi.samples.real.tolist(),
            "im": psi.samples.imag.tolist(),
            "flags": sorted(psi.flags),
        }
        _emit(args, dumps(obj) + "\n")


def _emit_check(args, residual):
    result = CheckResult(float(residual), args.tol)
    _emit_json(args, result.to_json())
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def cmd_classify(args):
    _emit_json(args, sp.classify(load_matrix(args.matrix), args.tol).to_json())


def cmd_witness(args):
    _emit_json(args, sp.lemma_witness(load_matrix(args.matrix), args.tol, args.seed).to_json())


def cmd_williamson(args):
    d = sp.williamson(load_matrix(args.matrix))
    _emit_json(args, {"S": matrix_to_json(d.S), "sigma": d.sigma.tolist(), "residual": d.residual})


def cmd_sympeig(args):
    _emit_json(args, {"spectrum": sp.symplectic_eigenvalues(load_matrix(args.matrix)).tolist()})


def cmd_capacity(args):
    _emit_json(args, {"capacity": sp.capacity_ellipsoid(sp.Ellipsoid(load_matrix(args.matrix)))})


def cmd_ballcheck(args):
    e = sp.Ellipsoid(load_matrix(args.matrix))
    if args.map is not None:
        e = sp.pushforward_ellipsoid(e, load_matrix(args.map))
    radius = sp.is_symplectic_ball(e, args.tol)
    _emit_json(args, {"ball": radius is not None, "radius": radius, "form": matrix_to_json(e.G)})


def cmd_gausswigner(args):
    Y = None if args.Y is None else load_matrix(args.Y)
    ps = gs.wigner_covariance(gs.GaussianState(load_matrix(args.X), Y, args.hbar))
    _emit_json(args, {"G": matrix_to_json(ps.G), "hbar": ps.hbar})


def cmd_refute(args):
    tol = gs.REFUTATION_TOL if args.tol is None else args.tol
    _emit_json(args, gs.theorem1_refutation(load_matrix(args.matrix), tol, args.seed).to_json())


def cmd_wigner(args):
    W = wigner(load_state(args.state, args.hbar))
    if args.npy:
        if not args.out:
            raise InputError("--npy needs --out")
        _emit(args, None, W.samples)
    elif args.format == "csv":
        _emit(args, phasespace_to_csv(W.grid.x, W.grid.p, W.samples))
    else:
        obj = {"x": W.grid.x.tolist(), "p": W.grid.p.tolist(),
               "re": W.samples.real.tolist(), "im": W.samples.imag.tolist()}
        _emit(args, dumps(obj) + "\n")


def cmd_covcheck(args):
    psi = load_state(args.state, args.hbar)
    return _emit_check(args, covariance_check(psi, load_matrix(args.matrix)))


def cmd_anticovcheck(args):
    psi = load_state(args.state, args.hbar)
    return _emit_check(args, antisymplectic_covariance_check(psi, load_matrix(args.matrix)))


def cmd_weyl(args):
    a = load_symbol(args.symbol, args.hbar)
    _emit_state(args, weyl_apply(a, load_state(args.state, args.hbar)))


def cmd_weylcov(args):
    a = load_symbol(args.symbol, args.hbar)
    psi = load_state(args.state, args.hbar)
    return _emit_check(args, weyl_covariance_check(a, load_matrix(args.matrix), psi))


def cmd_pairing(args):
    a = load_symbol(args.symbol, args.hbar)
    psi = load_state(args.psi, args.hbar)
    phi = load_state(args.phi, args.hbar)
    return _emit_check(args, weyl_pairing_check(a, psi, phi))


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised searches")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    def tol_arg(p, default=DEFAULT_TOL):
        p.add_argument("--tol", type=float, default=default, help="tolerance")

    parser = _Parser(prog="wigcov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, matrix=False, state=False, symbol=False, tol=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if symbol:
            p.add_argument("symbol", help="symbol CSV (x,p,re,im)")
        if state:
            p.add_argument("state", help="wave-function CSV (x,re,im)")
        if matrix:
            p.add_argument("matrix", help="matrix JSON, inline or file path")
        if tol:
            tol_arg(p)
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "classify a map as symplectic/antisymplectic/neither", matrix=True)
    add("witness", cmd_witness, "Gaussian witness against (anti)symplecticity", matrix=True)
    add("williamson", cmd_williamson, "Williamson normal form of an SPD matrix", matrix=True)
    add("sympeig", cmd_sympeig, "symplectic eigenvalues of an SPD matrix", matrix=True)
    add("capacity", cmd_capacity, "symplectic capacity of the ellipsoid Gz.z <= 1", matrix=True)
    p = add("ballcheck", cmd_ballcheck, "is the ellipsoid (or its image) a symplectic ball", matrix=True)
    p.add_argument("--map", help="push the ellipsoid forward by this matrix first")
    p = add("gausswigner", cmd_gausswigner, "covariance form of a Gaussian state", tol=False)
    p.add_argument("X", help="SPD matrix X")
    p.add_argument("--Y", help="symmetric matrix Y (default 0)")
    p = add("refute", cmd_refute, "decide Wigner covariance under a map", matrix=True, tol=False)
    tol_arg(p, None)
    p = add("wigner", cmd_wigner, "Wigner transform of a sampled state", state=True, tol=False)
    p.add_argument("--npy", action="store_true", help="write the N x N samples as .npy to --out")
    add("covcheck", cmd_covcheck, "symplectic covariance residual", state=True, matrix=True)
    add("anticovcheck", cmd_anticovcheck, "antisymplectic covariance residual", state=True, matrix=True)
    add("weyl", cmd_weyl, "apply a Weyl operator to a state", state=True, symbol=True, tol=False)
    add("weylcov", cmd_weylcov, "Weyl operator covariance residual", symbol=True, state=True, matrix=True)
    p = sub.add_parser("pairing", parents=[common], help="Weyl operator / cross-Wigner pairing residual")
    p.add_argument("symbol", help="symbol CSV (x,p,re,im)")
    p.add_argument("psi", help="wave-function CSV")
    p.add_argument("phi", help="wave-function CSV")
    tol_arg(p)
    p.set_defaults(func=cmd_pairing)
    return parser


def _fail(exc):
    sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return EXIT_INPUT


def main(argv=None):
    """Run the CLI and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.hbar > 0:
            raise InputError(f"--hbar must be positive, got {args.hbar}")
        status = args.func(args)
    except (ValueError, OSError) as exc:
        return _fail(exc)
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())

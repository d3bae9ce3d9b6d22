"""Sampling grids, sampled wave functions and sampled phase-space functions (n = 1)."""

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.interpolate import make_interp_spline

from ..errors import GridMismatchError, WigcovError

# relative amplitude above which boundary samples count as a leak
BOUNDARY_LEAK = 1e-12


@dataclass(frozen=True)
class Grid:
    """Periodic grid with ``N`` samples over ``[-L/2, L/2)``.

    ``x_k = (k - N/2) dx`` with ``dx = L/N`` and ``p_m = (m - N/2) dp`` with
    ``dp = 2 pi hbar / L``.  Wigner transforms only populate the central half
    of the momentum axis (:attr:`band`); see :func:`~wigcov.phasespace.wigner`.
    """

    N: int
    L: float
    hbar: float = 1.0

    def __post_init__(self):
        N = int(self.N)
        if N != self.N or N < 8 or N & (N - 1):
            raise WigcovError(f"N must be a power of two >= 8, got {self.N!r}")
        if not self.L > 0:
            raise WigcovError(f"L must be positive, got {self.L!r}")
        if not self.hbar > 0:
            raise WigcovError(f"hbar must be positive, got {self.hbar!r}")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "hbar", float(self.hbar))

    @classmethod
    def balanced(cls, N, hbar=1.0):
        """Grid with ``dx == dp``, i.e. ``L = sqrt(2 pi hbar N)``."""
        return cls(N, float(np.sqrt(2 * np.pi * hbar * N)), hbar)

    @property
    def dx(self):
        return self.L / self.N

    @property
    def dp(self):
        return 2 * np.pi * self.hbar / self.L

    @property
    def x(self):
        return (np.arange(self.N) - self.N // 2) * self.dx

    @property
    def p(self):
        return (np.arange(self.N) - self.N // 2) * self.dp

    @property
    def band(self):
        """Momentum indices carrying Wigner values: the central half."""
        return slice(self.N // 4, 3 * self.N // 4)

    @property
    def p_band_limits(self):
        p = self.p[self.band]
        return p[0], p[-1]

    def mesh(self):
        return np.meshgrid(self.x, self.p, indexing="ij")


def _check_same_grid(*grids):
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {g}")


@dataclass(frozen=True)
class WaveFunction:
    """Samples ``psi(x_k)`` on a :class:`Grid`.

    ``flags`` collects accuracy warnings raised while the samples were
    produced, e.g. ``"boundary-leak"`` when the function no longer decays at
    the edge of the grid.
    """

    grid: Grid
    samples: np.ndarray
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.grid.N,):
            raise GridMismatchError(f"expected {self.grid.N} samples, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise WigcovError("wave function has non-finite samples")
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "flags", frozenset(self.flags))

    @classmethod
    def from_function(cls, grid, f):
        return cls(grid, f(grid.x))

    @property
    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.grid.dx))

    def conjugate(self):
        return WaveFunction(self.grid, np.conj(self.samples), self.flags)

    def with_samples(self, samples, extra_flags=()):
        return WaveFunction(self.grid, samples, self.flags | set(extra_flags))

    def boundary_ratio(self):
        """Largest edge sample relative to the largest sample."""
        a = np.abs(self.samples)
        peak = a.max()
        if peak == 0:
            return 0.0
        return float(max(a[:2].max(), a[-2:].max()) / peak)


@dataclass(frozen=True)
class PhaseSpaceFunction:
    """Samples ``f(x_i, p_j)`` on the ``N x N`` phase-space grid, indexed ``[x, p]``."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        N = self.grid.N
        if s.shape != (N, N):
            raise GridMismatchError(f"expected {N}x{N} samples, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise WigcovError("phase-space function has non-finite samples")
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_function(cls, grid, f):
        """Sample ``f(x, p)`` (vectorised over mesh arrays)."""
        X, P = grid.mesh()
        return cls(grid, np.broadcast_to(f(X, P), X.shape))


def to_index(grid, x, p):
    return np.asarray(x) / grid.dx + grid.N // 2, np.asarray(p) / grid.dp + grid.N // 2


def interpolate(values, grid, x, p, order=5, mode="grid-constant"):
    """Spline interpolation of gridded phase-space samples at points ``(x, p)``.

    Args:
        values: ``N x N`` samples (real or complex).
        grid: the grid they live on.
        x, p: arrays of query coordinates (same shape).
        order: spline order (1 is bilinear).
        mode: boundary handling passed to :func:`scipy.ndimage.map_coordinates`;
            ``"grid-constant"`` extends by zero, ``"nearest"`` by the edge value.
    """
    ix, ip = to_index(grid, x, p)
    coords = np.array([np.ravel(ix), np.ravel(ip)])
    values = np.asarray(values)

    def run(v):
        return ndimage.map_coordinates(v, coords, order=order, mode=mode, cval=0.0)

    if np.iscomplexobj(values):
        out = run(values.real) + 1j * run(values.imag)
    else:
        out = run(values)
    return out.reshape(np.shape(ix))


def compose_linear(f, S, order=5, mode="grid-constant"):
    """The function ``z -> f(S z)`` sampled on the same grid."""
    X, P = f.grid.mesh()
    S = np.asarray(S, dtype=float)
    Xs = S[0, 0] * X + S[0, 1] * P
    Ps = S[1, 0] * X + S[1, 1] * P
    return PhaseSpaceFunction(f.grid, interpolate(f.samples, f.grid, Xs, Ps, order, mode))


def midpoint_rows(values, grid, order=5):
    """Values on the half-step lattice ``x = (s/2 - N/2) dx``, ``s = 0 .. 2N-2``.

    Even rows are the samples themselves; odd rows come from a not-a-knot
    spline of degree ``order`` along ``x`` (exact for polynomials of that
    degree).
    """
    values = np.asarray(values)
    N = grid.N
    x = grid.x
    mids = x[:-1] + 0.5 * grid.dx

    def run(v):
        if order == 1:
            return 0.5 * (v[:-1] + v[1:])
        return make_interp_spline(x, v, k=order, axis=0)(mids)

    half = run(values.real) + 1j * run(values.imag) if np.iscomplexobj(values) else run(values)
    rows = np.empty((2 * N - 1,) + values.shape[1:], dtype=np.result_type(values, half))
    rows[0::2] = values
    rows[1::2] = half
    return rows

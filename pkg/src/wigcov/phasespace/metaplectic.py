"""Metaplectic operators on a 1-d grid via a factorisation into generators.

Generators and the symplectic matrices they cover:

* ``Chirp(c)``: ``psi -> exp(i c x^2 / (2 hbar)) psi``, covering ``[[1, 0], [c, 1]]``;
* ``FourierJ``: ``psi -> (2 pi i hbar)^{-1/2} int exp(-i x x' / hbar) psi(x') dx'``,
  covering ``J = [[0, 1], [-1, 0]]``;
* ``Dilation(l)``: ``psi -> |l|^{-1/2} psi(x / l)``, covering ``diag(l, 1/l)``.

Each covers its matrix in the sense ``W(S_hat psi) = W psi o S^{-1}``.  The
lift is fixed by the principal square root in ``FourierJ``; the sign ambiguity
of the double cover does not affect any Wigner-level identity.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.signal import czt

from ..errors import NotSymplecticError, WigcovError
from ..matrixkit import as_matrix
from .grid import BOUNDARY_LEAK, WaveFunction

SYMPLECTIC_TOL = 1e-10
# relative change of the norm above which a result is flagged
NORM_DRIFT = 1e-8
# largest chirp rate tolerated before switching to the five-generator form
CHIRP_RATE_LIMIT = 2.0


@dataclass(frozen=True)
class Chirp:
    c: float

    def matrix(self):
        return np.array([[1.0, 0.0], [self.c, 1.0]])


@dataclass(frozen=True)
class FourierJ:
    def matrix(self):
        return np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class Dilation:
    l: float

    def __post_init__(self):
        if self.l == 0:
            raise WigcovError("dilation factor must be nonzero")

    def matrix(self):
        return np.diag([self.l, 1.0 / self.l])


Generator = Union[Chirp, FourierJ, Dilation]


@dataclass(frozen=True)
class MetaplecticFactorization:
    """Generators listed left to right as in the matrix product."""

    factors: Tuple[Generator, ...]

    def matrix(self):
        S = np.eye(2)
        for f in self.factors:
            S = S @ f.matrix()
        return S


def _check_sl2(S, tol):
    S = as_matrix(S)
    if S.shape != (2, 2):
        raise WigcovError(f"expected a 2x2 matrix, got {S.shape}")
    residual = abs(np.linalg.det(S) - 1.0)
    if residual > tol * max(1.0, np.linalg.norm(S) ** 2):
        raise NotSymplecticError(residual, tol, "2x2 map (det != 1)")
    return S


def _drop_trivial(factors):
    out = []
    for f in factors:
        if isinstance(f, Chirp) and f.c == 0.0:
            continue
        if isinstance(f, Dilation) and f.l == 1.0:
            continue
        out.append(f)
    return tuple(out)


def factor_symplectic_2x2(S, tol=SYMPLECTIC_TOL):
    """Write ``S = [[a, b], [c, d]]`` (det 1) as a product of generators.

    ``b == 0``: ``Chirp(c/a) Dilation(a)``.  Otherwise one of two exact
    identities is used:

    * ``Chirp(d/b) Dilation(b) FourierJ Chirp(a/b)``;
    * ``Chirp(c/a) Dilation(-a) FourierJ Chirp(-b/a) FourierJ`` (needs ``a != 0``).

    The first is preferred; the second takes over when the first needs chirp
    rates above ``CHIRP_RATE_LIMIT`` and the second needs smaller ones (small
    ``|b|``), since fast chirps are undersampled on the grid.

    Raises:
        NotSymplecticError: if ``det S`` differs from 1 beyond ``tol``.
    """
    S = _check_sl2(S, tol)
    (a, b), (c, d) = S
    if b == 0.0:
        factors = [Chirp(c / a), Dilation(a)]
    else:
        rate_b = max(abs(a), abs(d)) / abs(b)
        rate_a = max(abs(b), abs(c)) / abs(a) if a != 0.0 else np.inf
        if rate_b <= max(rate_a, CHIRP_RATE_LIMIT):
            factors = [Chirp(d / b), Dilation(b), FourierJ(), Chirp(a / b)]
        else:
            factors = [Chirp(c / a), Dilation(-a), FourierJ(), Chirp(-b / a), FourierJ()]
    return MetaplecticFactorization(_drop_trivial(factors))


def _apply_chirp(grid, samples, c):
    return samples * np.exp(1j * c * grid.x**2 / (2 * grid.hbar))


def _apply_fourier(grid, samples):
    # sum_k psi_k exp(-i x_j x_k / hbar) via a chirp-z transform
    N, h = grid.N, grid.N // 2
    alpha = grid.dx**2 / grid.hbar
    idx = np.arange(N)
    pre = samples * np.exp(1j * alpha * h * idx)
    summed = czt(pre, N, np.exp(-1j * alpha), 1.0)
    post = np.exp(1j * alpha * h * idx - 1j * alpha * h * h)
    return post * summed * grid.dx / np.sqrt(2j * np.pi * grid.hbar)


def trig_interpolate(grid, samples, xq):
    """Evaluate the trigonometric interpolant of periodic samples at ``xq``."""
    N = grid.N
    coeffs = np.fft.fft(samples) / N
    m = np.fft.fftfreq(N, 1.0 / N)
    t = (np.asarray(xq) + grid.L / 2) / grid.L
    phase = 2j * np.pi * np.outer(t, m)
    basis = np.exp(phase)
    # split the Nyquist mode symmetrically so real data stay real
    nyq = N // 2
    basis[:, nyq] = np.cos(np.pi * N * t)
    return basis @ coeffs


def _apply_dilation(grid, samples, l):
    xq = grid.x / l
    # outside the grid the state is taken to vanish, not to repeat periodically
    inside = (xq >= -grid.L / 2) & (xq < grid.L / 2)
    out = np.zeros(grid.N, dtype=complex)
    out[inside] = trig_interpolate(grid, samples, xq[inside])
    return out / np.sqrt(abs(l))


def leak_levels(grid, samples):
    """``(edge, band)``: largest edge sample and largest near-Nyquist Fourier
    coefficient, each relative to the largest one."""
    a = np.abs(samples)
    peak = a.max()
    if peak == 0:
        return 0.0, 0.0
    edge = max(a[:2].max(), a[-2:].max()) / peak
    spec = np.abs(np.fft.fft(samples))
    freq = np.abs(np.fft.fftfreq(grid.N, 1.0 / grid.N))
    band = spec[freq >= grid.N // 2 - grid.N // 16].max() / spec.max()
    return float(edge), float(band)


def _leak_flags(grid, samples):
    edge, band = leak_levels(grid, samples)
    flags = set()
    if edge > BOUNDARY_LEAK:
        flags.add("boundary-leak")
    if band > BOUNDARY_LEAK:
        flags.add("band-leak")
    return flags


def apply_generator(f, psi, inverse=False):
    """Apply one generator, or its inverse, to ``psi``."""
    grid = psi.grid
    if isinstance(f, Chirp):
        out = _apply_chirp(grid, psi.samples, -f.c if inverse else f.c)
    elif isinstance(f, FourierJ):
        if inverse:
            # the operator is unitary; its inverse is the adjoint
            out = np.conj(_apply_fourier(grid, np.conj(psi.samples)))
        else:
            out = _apply_fourier(grid, psi.samples)
    elif isinstance(f, Dilation):
        out = _apply_dilation(grid, psi.samples, 1.0 / f.l if inverse else f.l)
    else:
        raise WigcovError(f"unknown generator {f!r}")
    return psi.with_samples(out, _leak_flags(grid, out))


def metaplectic_apply(S, psi, tol=SYMPLECTIC_TOL, inverse=False):
    """Apply a metaplectic lift of the 2x2 symplectic ``S`` to ``psi``.

    The result satisfies ``W(S_hat psi) = W psi o S^{-1}``.  Accuracy flags
    are attached when an intermediate state stops fitting on the grid:
    ``"boundary-leak"`` (no decay at the edge in position), ``"band-leak"``
    (no decay near the Nyquist frequency) and ``"norm-drift"`` (norm not
    preserved to ``1e-8``).

    With ``inverse=True`` the exact inverse of the same lift is applied, so
    that ``metaplectic_apply(S, metaplectic_apply(S, psi), inverse=True)``
    returns ``psi`` with no sign ambiguity.  Lifting ``S^{-1}`` directly may
    differ from this by the sign of the double cover.
    """
    factorization = factor_symplectic_2x2(S, tol)
    out = psi
    order = factorization.factors if inverse else reversed(factorization.factors)
    for f in order:
        out = apply_generator(f, out, inverse)
    if psi.norm > 0 and abs(out.norm - psi.norm) > NORM_DRIFT * psi.norm:
        out = out.with_samples(out.samples, {"norm-drift"})
    return out

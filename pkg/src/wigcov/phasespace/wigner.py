"""Discrete Wigner and cross-Wigner transforms on a 1-d grid.

For a grid point ``x_k`` the integrand ``psi(x + y/2) conj(phi(x - y/2))`` is
sampled at ``y = 2 m dx`` using the sample pairs ``(x_{k+m}, x_{k-m})`` (indices
wrap around), so no interpolation is needed.  Sampling ``y`` with step
``2 dx`` makes the transform periodic in ``p`` with period ``pi hbar / dx``,
which is half of the momentum extent of the grid.  One period is stored on
the central half of the momentum axis and the outer half is left at zero.
The lag window is ``|m| < N/4``, i.e. ``|y| < L/2``.

Both conventions assume states whose position and momentum content sit in the
central half of the grid.
"""

import numpy as np

from .grid import PhaseSpaceFunction, _check_same_grid


def cross_wigner(psi, phi):
    """Cross-Wigner transform ``W(psi, phi)``, complex valued.

    ``W(psi, phi)(x, p) = (2 pi hbar)^{-1} int exp(-i p y / hbar)
    psi(x + y/2) conj(phi(x - y/2)) dy``.
    """
    _check_same_grid(psi.grid, phi.grid)
    grid = psi.grid
    N = grid.N
    M = N // 2
    lags = np.fft.fftfreq(M, 1.0 / M).astype(int)
    k = np.arange(N)[:, None]
    prod = psi.samples[(k + lags) % N] * np.conj(phi.samples[(k - lags) % N])
    prod[:, lags == -(M // 2)] = 0.0
    spectrum = np.fft.fftshift(np.fft.fft(prod, axis=1), axes=1)
    W = np.zeros((N, N), dtype=complex)
    W[:, grid.band] = spectrum * (2 * grid.dx / (2 * np.pi * grid.hbar))
    return PhaseSpaceFunction(grid, W)


def wigner(psi):
    """Wigner transform of ``psi``; real up to rounding (samples kept complex)."""
    return cross_wigner(psi, psi)

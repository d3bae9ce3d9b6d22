"""Weyl quantisation of sampled symbols on a 1-d grid."""

import numpy as np

from .grid import WaveFunction, _check_same_grid, midpoint_rows


def weyl_kernel(a, order=5):
    """Kernel matrix ``K[j, k]`` with ``(A psi)(x_j) = sum_k K[j, k] psi(x_k) dx``.

    ``K[j, k] = (2 pi hbar)^{-1} sum_m exp(i p_m (x_j - x_k) / hbar)
    a((x_j + x_k)/2, p_m) dp``.  Midpoints of odd index sum fall on the
    half-step lattice, where the symbol is interpolated along ``x``.
    """
    grid = a.grid
    N = grid.N
    rows = midpoint_rows(a.samples, grid, order)
    # sum_m a_m exp(2 pi i (m - N/2) r / N) = N (-1)^r ifft(a)[r]
    r = np.arange(N)
    sign = np.where(r % 2, -1.0, 1.0)
    khat = np.fft.ifft(rows, axis=1) * (N * sign * grid.dp / (2 * np.pi * grid.hbar))
    j = np.arange(N)[:, None]
    k = np.arange(N)[None, :]
    return khat[j + k, (j - k) % N]


def weyl_apply(a, psi, order=5):
    """Apply the Weyl operator with sampled symbol ``a`` to ``psi``.

    Raises:
        GridMismatchError: if ``a`` and ``psi`` live on different grids.
    """
    _check_same_grid(a.grid, psi.grid)
    K = weyl_kernel(a, order)
    return WaveFunction(psi.grid, K @ psi.samples * psi.grid.dx, psi.flags)

import numpy as np
import pytest

from wigcov.errors import GridMismatchError
from wigcov.phasespace import Grid, PhaseSpaceFunction, WaveFunction, weyl_apply, weyl_kernel, weyl_pairing_check, wigner

from conftest import gaussian_1d, hermite1_1d


def dense_weyl(symbol, grid, psi_samples):
    """Direct triple sum with the symbol evaluated exactly at the midpoints."""
    x, p = grid.x, grid.p
    xj = x[:, None, None]
    xk = x[None, :, None]
    pm = p[None, None, :]
    phase = np.exp(1j * pm * (xj - xk) / grid.hbar)
    K = np.sum(phase * symbol((xj + xk) / 2, pm), axis=-1) * grid.dp / (2 * np.pi * grid.hbar)
    return K @ psi_samples * grid.dx


def band_limited_symbol(rng):
    cx, cp, k1, k2 = rng.uniform(-0.5, 0.5, 4)
    return lambda X, P: (1 + cx * X + cp * P + k1 * np.cos(0.7 * X + k2 * P)) * np.exp(-(X**2 + P**2) / 6)


class TestWeylApply:
    def test_unit_symbol_is_identity(self, hermite512):
        one = PhaseSpaceFunction.from_function(hermite512.grid, lambda X, P: np.ones_like(X))
        assert np.abs(weyl_apply(one, hermite512).samples - hermite512.samples).max() <= 1e-8

    def test_position_symbol_against_dense_oracle(self):
        g = Grid.balanced(64)
        psi = gaussian_1d(g.x)
        a = PhaseSpaceFunction.from_function(g, lambda X, P: X)
        out = weyl_apply(a, WaveFunction(g, psi)).samples
        oracle = dense_weyl(lambda X, P: X + 0 * P, g, psi)
        inner = np.abs(g.x) < g.L / 4
        assert np.abs(out - oracle)[inner].max() <= 1e-6
        assert np.abs(out - g.x * psi)[inner].max() <= 1e-6

    def test_position_symbol_large_grid(self, grid512, gauss512):
        a = PhaseSpaceFunction.from_function(grid512, lambda X, P: X)
        out = weyl_apply(a, gauss512).samples
        assert np.abs(out - grid512.x * gauss512.samples).max() <= 1e-6

    def test_momentum_symbol_is_derivative(self, grid512, gauss512):
        a = PhaseSpaceFunction.from_function(grid512, lambda X, P: P)
        k = 2 * np.pi * np.fft.fftfreq(grid512.N, grid512.dx)
        deriv = np.fft.ifft(1j * k * np.fft.fft(gauss512.samples))
        out = weyl_apply(a, gauss512).samples
        assert np.abs(out - (-1j * grid512.hbar) * deriv).max() <= 1e-5

    def test_momentum_symbol_other_hbar(self):
        hbar = 0.3
        g = Grid.balanced(512, hbar)
        psi = WaveFunction.from_function(g, lambda x: gaussian_1d(x, hbar=hbar))
        a = PhaseSpaceFunction.from_function(g, lambda X, P: P)
        out = weyl_apply(a, psi).samples
        # -i hbar d/dx of the Gaussian is i x psi
        assert np.abs(out - 1j * g.x * psi.samples).max() <= 1e-5

    def test_band_limited_symbol_against_dense_oracle(self):
        g = Grid.balanced(64)
        rng = np.random.default_rng(0)
        sym = band_limited_symbol(rng)
        psi = hermite1_1d(g.x)
        out = weyl_apply(PhaseSpaceFunction.from_function(g, sym), WaveFunction(g, psi)).samples
        oracle = dense_weyl(sym, g, psi)
        assert np.abs(out - oracle).max() <= 1e-4 * np.abs(oracle).max()

    def test_real_symbol_gives_hermitian_kernel(self, grid128):
        rng = np.random.default_rng(3)
        a = PhaseSpaceFunction.from_function(grid128, band_limited_symbol(rng))
        K = weyl_kernel(a)
        assert np.abs(K - K.conj().T).max() <= 1e-12 * np.abs(K).max()

    def test_grid_mismatch(self, gauss512):
        a = PhaseSpaceFunction.from_function(Grid.balanced(128), lambda X, P: X)
        with pytest.raises(GridMismatchError):
            weyl_apply(a, gauss512)


class TestPairing:
    def test_unit_symbol(self, gauss512, hermite512):
        one = PhaseSpaceFunction.from_function(gauss512.grid, lambda X, P: np.ones_like(X))
        assert weyl_pairing_check(one, gauss512, hermite512) <= 1e-8
        assert weyl_pairing_check(one, hermite512, hermite512) <= 1e-8

    def test_gaussian_symbol_closed_form(self, grid512, gauss512):
        s = 2.0
        a = PhaseSpaceFunction.from_function(grid512, lambda X, P: np.exp(-(X**2 + P**2) / s))
        assert weyl_pairing_check(a, gauss512, gauss512) <= 1e-6
        # both sides equal s / (1 + s) for the standard Gaussian
        lhs = np.sum(weyl_apply(a, gauss512).samples * np.conj(gauss512.samples)) * grid512.dx
        assert abs(lhs - s / (1 + s)) <= 1e-8
        W = wigner(gauss512).samples
        rhs = np.sum(a.samples * W) * grid512.dx * grid512.dp
        assert abs(rhs - s / (1 + s)) <= 1e-8

    def test_band_limited_symbol_hermite_pair(self, grid512, gauss512, hermite512):
        rng = np.random.default_rng(4)
        for _ in range(5):
            a = PhaseSpaceFunction.from_function(grid512, band_limited_symbol(rng))
            assert weyl_pairing_check(a, hermite512, gauss512) <= 1e-5

    def test_pairing_against_dense_quadrature(self):
        # both sides by brute force at N = 64; the identity itself holds to quadrature accuracy
        g = Grid.balanced(64)
        sym = band_limited_symbol(np.random.default_rng(5))
        f, h = hermite1_1d, gaussian_1d
        lhs = np.sum(dense_weyl(sym, g, f(g.x)) * np.conj(h(g.x))) * g.dx
        y = np.linspace(-20, 20, 2001)
        X, P, Y = g.x[:, None, None], g.p[None, :, None], y[None, None, :]
        W = np.sum(np.exp(-1j * P * Y) * f(X + Y / 2) * np.conj(h(X - Y / 2)), axis=-1) * (y[1] - y[0]) / (2 * np.pi)
        XX, PP = g.mesh()
        rhs = np.sum(sym(XX, PP) * W) * g.dx * g.dp
        assert abs(lhs - rhs) <= 1e-5
        a = PhaseSpaceFunction.from_function(g, sym)
        assert weyl_pairing_check(a, WaveFunction(g, f(g.x)), WaveFunction(g, h(g.x))) <= 1e-5

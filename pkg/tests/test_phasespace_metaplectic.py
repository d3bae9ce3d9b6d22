import numpy as np
import pytest

from wigcov import gaussian as gs
from wigcov.errors import NotSymplecticError, WigcovError
from wigcov.phasespace import (
    Chirp,
    Dilation,
    FourierJ,
    Grid,
    WaveFunction,
    factor_symplectic_2x2,
    metaplectic_apply,
    wigner,
)
from wigcov.phasespace.metaplectic import apply_generator
from wigcov.symplectic import random_symplectic

from conftest import gaussian_1d, hermite1_1d


def lct_quadrature(S, f, x, hbar=1.0, span=15.0, points=6001):
    """Direct quadrature of the linear canonical transform kernel (needs b != 0)."""
    (a, b), (c, d) = S
    xp = np.linspace(-span, span, points)
    w = np.full(points, xp[1] - xp[0])
    w[[0, -1]] *= 0.5
    phase = np.exp(1j / (2 * hbar * b) * (d * x[:, None] ** 2 - 2 * x[:, None] * xp + a * xp**2))
    return (phase * f(xp)) @ w / np.sqrt(2j * np.pi * hbar * b)


def match_up_to_phase(out, ref):
    """Best unimodular fit ``out ~ c ref``; returns (|c|, max deviation)."""
    c = np.vdot(ref, out) / np.vdot(ref, ref)
    return abs(c), np.abs(out - c / abs(c) * ref).max()


def symplectic_from(a, b, c):
    return np.array([[a, b], [c, (1 + b * c) / a]])


class TestFactorization:
    def test_identity_is_empty(self):
        assert factor_symplectic_2x2(np.eye(2)).factors == ()

    def test_J_is_single_fourier(self):
        assert factor_symplectic_2x2(np.array([[0.0, 1.0], [-1.0, 0.0]])).factors == (FourierJ(),)

    def test_lower_triangular(self):
        f = factor_symplectic_2x2(np.array([[2.0, 0.0], [3.0, 0.5]]))
        assert f.factors == (Chirp(1.5), Dilation(2.0))

    def test_reconstructs_200_random(self):
        for seed in range(200):
            S = random_symplectic(1, seed)
            f = factor_symplectic_2x2(S)
            assert np.abs(f.matrix() - S).max() <= 1e-10 * max(1.0, np.abs(S).max()) ** 2
            assert len(f.factors) <= 5

    def test_four_generators_when_well_conditioned(self):
        S = symplectic_from(1.0, 2.0, 0.5)
        f = factor_symplectic_2x2(S)
        assert len(f.factors) == 4
        assert isinstance(f.factors[2], FourierJ)

    def test_small_b_avoids_large_chirps(self):
        S = symplectic_from(2.0, 1e-6, 0.3)
        f = factor_symplectic_2x2(S)
        np.testing.assert_allclose(f.matrix(), S, atol=1e-12)
        rates = [abs(g.c) for g in f.factors if isinstance(g, Chirp)]
        assert max(rates) < 1.0

    def test_rejects_non_symplectic(self):
        with pytest.raises(NotSymplecticError):
            factor_symplectic_2x2(np.diag([2.0, 1.0]))
        with pytest.raises(WigcovError):
            factor_symplectic_2x2(np.eye(4))

    def test_generator_matrices(self):
        np.testing.assert_array_equal(Chirp(2.0).matrix(), [[1, 0], [2, 1]])
        np.testing.assert_array_equal(Dilation(4.0).matrix(), [[4, 0], [0, 0.25]])
        with pytest.raises(WigcovError):
            Dilation(0.0)


class TestGenerators:
    def test_chirp(self, gauss512):
        out = apply_generator(Chirp(0.7), gauss512)
        np.testing.assert_allclose(out.samples, gauss512.samples * np.exp(0.35j * gauss512.grid.x**2))

    def test_parity_dilation(self, hermite512):
        out = apply_generator(Dilation(-1.0), hermite512)
        np.testing.assert_allclose(out.samples, -hermite512.samples, atol=1e-12)

    def test_dilation_against_closed_form(self, grid512):
        psi = WaveFunction.from_function(grid512, hermite1_1d)
        out = apply_generator(Dilation(1.7), psi)
        x = grid512.x
        np.testing.assert_allclose(out.samples, hermite1_1d(x / 1.7) / np.sqrt(1.7), atol=1e-12)

    def test_fourier_squared_is_parity_times_phase(self, hermite512):
        twice = apply_generator(FourierJ(), apply_generator(FourierJ(), hermite512))
        np.testing.assert_allclose(twice.samples, -1j * hermite512.samples[::-1][np.r_[-1, 0:511]], atol=1e-10)

    def test_fourier_of_hermite(self, hermite512):
        out = apply_generator(FourierJ(), hermite512)
        # F[x e^{-x^2/2}](k) = -i k e^{-k^2/2} with the extra (i)^{-1/2} of the kernel
        expected = np.exp(-0.25j * np.pi) * -1j * hermite1_1d(hermite512.grid.x)
        np.testing.assert_allclose(out.samples, expected, atol=1e-10)


class TestApply:
    def test_identity(self, hermite512):
        out = metaplectic_apply(np.eye(2), hermite512)
        assert np.abs(out.samples - hermite512.samples).max() <= 1e-12

    def test_fourier_of_squeezed_gaussian(self, grid512):
        psi = WaveFunction.from_function(grid512, lambda x: gaussian_1d(x, width=2**-0.5))
        out = metaplectic_apply(np.array([[0.0, 1.0], [-1.0, 0.0]]), psi)
        ref = gaussian_1d(grid512.x, width=2**0.5)
        mod, dev = match_up_to_phase(out.samples, ref)
        assert mod == pytest.approx(1.0, abs=1e-6)
        assert dev <= 1e-6

    def test_norm_preserved(self, hermite512):
        for seed in range(40):
            S = random_symplectic(1, seed)
            if np.linalg.norm(S, 2) > 3:
                continue
            out = metaplectic_apply(S, hermite512)
            assert abs(out.norm - hermite512.norm) <= 1e-8
            assert not out.flags

    @pytest.mark.parametrize("seed", [0, 1, 2, 5, 8])
    def test_against_kernel_quadrature(self, grid128, seed):
        rng = np.random.default_rng(seed)
        a, b = rng.uniform(0.5, 1.5), rng.choice([-1, 1]) * rng.uniform(0.4, 1.2)
        S = symplectic_from(a, b, rng.uniform(-1, 1))
        psi = WaveFunction.from_function(grid128, hermite1_1d)
        out = metaplectic_apply(S, psi).samples
        ref = lct_quadrature(S, hermite1_1d, grid128.x)
        mod, dev = match_up_to_phase(out, ref)
        assert mod == pytest.approx(1.0, abs=1e-6)
        assert dev <= 1e-6

    def test_kernel_of_J_is_the_fourier_generator(self, grid128):
        psi = WaveFunction.from_function(grid128, hermite1_1d)
        J = np.array([[0.0, 1.0], [-1.0, 0.0]])
        out = metaplectic_apply(J, psi).samples
        np.testing.assert_allclose(out, lct_quadrature(J, hermite1_1d, grid128.x), atol=1e-9)

    def test_chained_gaussian_oracle(self, grid512):
        # W(S psi_X) has covariance S^{-T} G S^{-1}; read off (X', Y') and compare
        S = random_symplectic(1, 11)
        state = gs.GaussianState(np.array([[1.4]]))
        psi = WaveFunction(grid512, state.evaluate(grid512.x))
        pushed = gs.metaplectic_pushforward(gs.wigner_covariance(state), S)
        image = gs.from_wigner_covariance(pushed)
        out = metaplectic_apply(S, psi).samples
        mod, dev = match_up_to_phase(out, image.evaluate(grid512.x))
        assert mod == pytest.approx(1.0, abs=1e-8)
        assert dev <= 1e-8

    def test_wigner_level_covariance(self, grid512, hermite512):
        # W(S_hat psi) = W psi o S^{-1}, compared pointwise to the closed form of W for psi = H_1
        S = symplectic_from(1.3, 0.6, -0.4)
        W = wigner(metaplectic_apply(S, hermite512)).samples
        X, P = grid512.mesh()
        Si = np.linalg.inv(S)
        Xs, Ps = Si[0, 0] * X + Si[0, 1] * P, Si[1, 0] * X + Si[1, 1] * P
        r2 = Xs**2 + Ps**2
        exact = (2 * r2 - 1) * np.exp(-r2) / np.pi
        assert np.linalg.norm(W - exact) / np.linalg.norm(exact) <= 1e-8

    def test_leak_flag(self):
        g = Grid(64, 10.0)
        psi = WaveFunction.from_function(g, gaussian_1d)
        out = metaplectic_apply(np.diag([4.0, 0.25]), psi)
        assert "boundary-leak" in out.flags

    def test_rejects_non_symplectic(self, gauss512):
        with pytest.raises(NotSymplecticError):
            metaplectic_apply(np.diag([2.0, 1.0]), gauss512)

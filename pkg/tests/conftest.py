import numpy as np
import pytest

from wigcov.phasespace import Grid, WaveFunction


def random_spd(n, rng, floor=0.1):
    A = rng.standard_normal((n, n))
    return A @ A.T + floor * np.eye(n)


def random_symmetric(n, rng):
    A = rng.standard_normal((n, n))
    return 0.5 * (A + A.T)


def gaussian_1d(x, width=1.0, hbar=1.0, chirp=0.0, center=0.0):
    """Normalised Gaussian exp(-(x-c)^2/(2 w^2 hbar)) with an optional chirp exp(-i k x^2/(2 hbar))."""
    u = x - center
    norm = (np.pi * hbar * width**2) ** -0.25
    return norm * np.exp(-(u**2) / (2 * width**2 * hbar) - 1j * chirp * u**2 / (2 * hbar))


def hermite1_1d(x, hbar=1.0):
    return np.sqrt(2.0 / hbar) * x * gaussian_1d(x, hbar=hbar)


@pytest.fixture(scope="session")
def grid512():
    return Grid.balanced(512)


@pytest.fixture(scope="session")
def grid20():
    return Grid(512, 20.0)


@pytest.fixture(scope="session")
def grid128():
    return Grid.balanced(128)


@pytest.fixture(scope="session")
def gauss512(grid512):
    return WaveFunction.from_function(grid512, gaussian_1d)


@pytest.fixture(scope="session")
def hermite512(grid512):
    return WaveFunction.from_function(grid512, hermite1_1d)

"""Symplectic linear algebra on R^{2n} with coordinates z = (x, p).

Covers the symplectic/antisymplectic classification of linear maps, the
Williamson normal form of positive definite matrices, the diagonalisation of
positive definite symplectic matrices by symplectic rotations, capacities of
ellipsoids, and the search for a Gaussian witness showing that a map is
neither symplectic nor antisymplectic.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import matrixkit as mk
from .errors import (
    NotPositiveDefiniteError,
    NotSymplecticError,
    SingularMatrixError,
    WigcovError,
    WitnessNotFoundError,
)
from .io import matrix_to_json

DEFAULT_TOL = 1e-8
RANDOM_WITNESS_DRAWS = 64


def standard_J(n):
    """The standard symplectic matrix ``[[0, I], [-I, 0]]`` of size ``2n``."""
    if int(n) != n or n < 1:
        raise WigcovError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def reflection_C(n):
    """The momentum reflection ``diag(I, -I)``."""
    return np.diag(np.r_[np.ones(n), -np.ones(n)])


def half_dim(M):
    M = mk.as_matrix(M)
    if M.shape[0] % 2:
        raise WigcovError(f"expected a matrix of even dimension, got {M.shape[0]}")
    return M.shape[0] // 2


def symplectic_residual(M):
    """Frobenius norm of ``M^T J M - J``."""
    M = np.asarray(M, dtype=float)
    J = standard_J(M.shape[0] // 2)
    return float(np.linalg.norm(M.T @ J @ M - J))


def symplectic_inverse(S):
    """Inverse of a symplectic matrix via ``S^{-1} = -J S^T J``."""
    S = np.asarray(S, dtype=float)
    J = standard_J(S.shape[0] // 2)
    return -J @ S.T @ J


class MapTag(str, enum.Enum):
    SYMPLECTIC = "symplectic"
    ANTISYMPLECTIC = "antisymplectic"
    NEITHER = "neither"


@dataclass(frozen=True)
class MapClass:
    """Classification of a linear map together with both residuals."""

    tag: MapTag
    residual_symplectic: float
    residual_antisymplectic: float

    def to_json(self):
        return {
            "tag": self.tag.value,
            "residuals": [self.residual_symplectic, self.residual_antisymplectic],
        }


def classify(M, tol=DEFAULT_TOL):
    """Classify ``M`` as symplectic, antisymplectic or neither.

    The residuals are ``||M^T J M - J||_F`` and ``||M^T J M + J||_F``; a tag is
    given when the corresponding residual is at most ``tol``.
    """
    n = half_dim(M)
    M = mk.as_matrix(M)
    J = standard_J(n)
    form = M.T @ J @ M
    rs = float(np.linalg.norm(form - J))
    ra = float(np.linalg.norm(form + J))
    if rs <= tol:
        tag = MapTag.SYMPLECTIC
    elif ra <= tol:
        tag = MapTag.ANTISYMPLECTIC
    else:
        tag = MapTag.NEITHER
    return MapClass(tag, rs, ra)


def check_symplectic(S, tol=DEFAULT_TOL, what="matrix"):
    res = symplectic_residual(mk.as_matrix(S))
    if res > tol:
        raise NotSymplecticError(res, tol, what)


def _check_spd(N, tol):
    N = mk.as_matrix(N)
    mk.check_symmetric(N, tol)
    return 0.5 * (N + N.T)


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``S.T @ N @ S = diag(sigma, sigma)`` with ``S`` symplectic.

    Attributes:
        S: symplectic matrix of size ``2n``.
        sigma: symplectic eigenvalues, descending.
        residual: ``||S^T N S - diag(sigma, sigma)||_F`` for the source ``N``.
    """

    S: np.ndarray
    sigma: np.ndarray
    residual: float


def williamson(N, tol=mk.DEFAULT_TOL):
    """Williamson normal form of a symmetric positive definite matrix.

    With ``R = N^{-1/2}``, the matrix ``K = R J R`` is antisymmetric; its
    canonical form ``O^T K O = [[0, D], [-D, 0]]`` gives
    ``S = R O diag(D^{-1/2}, D^{-1/2})`` and ``sigma = 1/D``.

    Raises:
        NotSymmetricError, NotPositiveDefiniteError: for invalid ``N``.
    """
    N = _check_spd(N, tol)
    n = half_dim(N)
    R = mk.spd_power(N, -0.5, tol)
    K = R @ standard_J(n) @ R
    O, D = mk.antisymmetric_canonical(K, tol)
    # D descending means sigma ascending; flip both blocks to get sigma descending
    order = np.arange(n)[::-1]
    perm = np.r_[order, order + n]
    scale = np.r_[D, D] ** -0.5
    S = (R @ O * scale)[:, perm]
    sigma = 1.0 / D[order]
    residual = float(np.linalg.norm(S.T @ N @ S - np.diag(np.r_[sigma, sigma])))
    return WilliamsonDecomposition(S, sigma, residual)


def symplectic_eigenvalues(N, tol=mk.DEFAULT_TOL):
    """Symplectic spectrum of ``N`` (moduli of the eigenvalues of ``J N``), descending."""
    N = _check_spd(N, tol)
    n = half_dim(N)
    root = mk.spd_sqrt(N, tol)
    _, D = mk.antisymmetric_canonical(root @ standard_J(n) @ root, tol)
    return D


def unitary_diagonalize_sp(G, tol=DEFAULT_TOL):
    """Diagonalise a positive definite symplectic matrix by a symplectic rotation.

    Returns ``(U, lam)`` with ``G = U.T @ diag(lam, 1/lam) @ U``, ``lam >= 1``
    descending, and ``U`` orthogonal and symplectic, i.e. of the block form
    ``[[A, -B], [B, A]]``.

    The rows of ``U`` are eigenvectors of ``G``: for a ``lam``-eigenvector
    ``u``, ``J^T u`` is a ``1/lam``-eigenvector, so each eigenvector is paired
    with its ``J^T`` image.

    Raises:
        NotSymplecticError: if ``G`` fails the symplectic check.
        NotSymmetricError, NotPositiveDefiniteError: if ``G`` is not SPD.
    """
    G = _check_spd(G, tol)
    n = half_dim(G)
    check_symplectic(G, tol * max(1.0, np.linalg.norm(G)) ** 2)
    w, Q = mk.sym_eig(G, tol)
    if w[0] <= tol * w[-1]:
        raise NotPositiveDefiniteError(w[0], tol)
    Jt = standard_J(n).T
    candidates = Q[:, np.argsort(-w, kind="stable")]
    pairs = mk.pair_planes(candidates, lambda v: Jt @ v, n)

    us, lams = [], []
    for u, _ in pairs:
        lam = u @ G @ u
        if lam < 1.0:
            u, lam = Jt @ u, 1.0 / lam
        us.append(u)
        lams.append(lam)
    order = np.argsort(-np.array(lams), kind="stable")
    first = np.column_stack([us[i] for i in order])
    V = np.hstack([first, Jt @ first])
    return V.T, np.array(lams)[order]


@dataclass(frozen=True)
class Ellipsoid:
    """The set ``{z : G z . z <= 1}`` for symmetric positive definite ``G``."""

    G: np.ndarray

    def __post_init__(self):
        G = mk.as_matrix(self.G)
        half_dim(G)
        if not mk.is_spd(G):
            raise WigcovError("ellipsoid form must be symmetric positive definite")
        object.__setattr__(self, "G", 0.5 * (G + G.T))

    @classmethod
    def ball(cls, n, radius=1.0):
        return cls(np.eye(2 * n) / radius**2)


def capacity_ellipsoid(e):
    """Symplectic capacity ``pi / lambda_max`` of an ellipsoid."""
    return float(np.pi / symplectic_eigenvalues(e.G)[0])


def pushforward_ellipsoid(e, K, tol=mk.DEFAULT_TOL):
    """Image ``{K z : G z . z <= 1}``, i.e. the ellipsoid with form ``K^{-T} G K^{-1}``."""
    K = mk.as_matrix(K)
    if abs(np.linalg.det(K)) <= tol:
        raise SingularMatrixError("push-forward by a singular map")
    Kinv = np.linalg.inv(K)
    return Ellipsoid(Kinv.T @ e.G @ Kinv)


def is_symplectic_ball(e, tol=DEFAULT_TOL) -> Optional[float]:
    """Radius ``r`` if ``e`` is the image of ``B(r)`` by a symplectic map, else ``None``.

    A symplectic ball has all symplectic eigenvalues equal to ``1/r**2``; the
    comparison is relative to the largest of them.
    """
    spec = symplectic_eigenvalues(e.G)
    if spec[0] - spec[-1] > tol * spec[0]:
        return None
    return float(np.mean(spec) ** -0.5)


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of the witness search.

    ``witness_G`` is ``diag(X, X^{-1})`` such that ``M^T G M`` is not
    symplectic; it is present exactly when the map is neither symplectic nor
    antisymplectic.  ``stage`` records which candidate family produced it.
    """

    classification: MapClass
    witness_G: Optional[np.ndarray] = None
    witness_residual: Optional[float] = None
    stage: Optional[int] = None

    def to_json(self):
        out = {"classification": self.classification.to_json(), "witness": None}
        if self.witness_G is not None:
            out["witness"] = {
                "G": matrix_to_json(self.witness_G),
                "residual": self.witness_residual,
                "stage": self.stage,
            }
        return out


def block_form(X):
    """``diag(X, X^{-1})`` for symmetric positive definite ``X``."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    Xinv = np.linalg.inv(X)
    G = np.zeros((2 * n, 2 * n))
    G[:n, :n] = X
    G[n:, n:] = 0.5 * (Xinv + Xinv.T)
    return G


def witness_candidates(n, seed=0):
    """Yield ``(stage, G)`` candidates in the order the witness search tries them.

    1. the identity; 2. ``Lambda = diag(2, ..., n+1)``; 3. ``Lambda = 2I``;
    4. ``X = I + E_ij / 2`` for every ``i < j``; 5. seeded random SPD ``X``.
    """
    yield 1, np.eye(2 * n)
    yield 2, block_form(np.diag(np.arange(2.0, n + 2.0)))
    yield 3, block_form(2.0 * np.eye(n))
    for i in range(n):
        for j in range(i + 1, n):
            X = np.eye(n)
            X[i, j] = X[j, i] = 0.5
            yield 4, block_form(X)
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_WITNESS_DRAWS):
        A = rng.standard_normal((n, n))
        yield 5, block_form(A @ A.T + 0.1 * np.eye(n))


def lemma_witness(M, tol=DEFAULT_TOL, seed=0):
    """Search for ``G = diag(X, X^{-1})`` with ``M^T G M`` not symplectic.

    Such a ``G`` exists exactly when ``M`` is neither symplectic nor
    antisymplectic.  Candidates come from :func:`witness_candidates`.

    Raises:
        SingularMatrixError: if ``|det M| <= tol``.
        WitnessNotFoundError: if ``M`` is classified as neither but no
            candidate works.
    """
    M = mk.as_matrix(M)
    n = half_dim(M)
    if abs(np.linalg.det(M)) <= tol:
        raise SingularMatrixError("witness search needs an invertible map")
    cls = classify(M, tol)
    if cls.tag is not MapTag.NEITHER:
        return WitnessResult(cls)
    for stage, G in witness_candidates(n, seed):
        res = symplectic_residual(M.T @ G @ M)
        if res > tol:
            return WitnessResult(cls, G, res, stage)
    raise WitnessNotFoundError(
        f"no witness found among {RANDOM_WITNESS_DRAWS} random draws and the deterministic family"
    )


def random_symplectic(n, seed, spread=0.5):
    """Seeded random symplectic matrix built as a product of 3 to 8 generators.

    Generators are ``J``, ``diag(L, L^{-T})`` for invertible ``L`` and the
    shear ``[[I, 0], [P, I]]`` for symmetric ``P``.  ``spread`` scales the
    random parts of ``L`` and ``P``.
    """
    rng = np.random.default_rng(seed)
    J = standard_J(n)
    S = np.eye(2 * n)
    for _ in range(int(rng.integers(3, 9))):
        kind = rng.integers(3)
        if kind == 0:
            F = J
        elif kind == 1:
            L = np.eye(n) + spread * rng.standard_normal((n, n))
            while abs(np.linalg.det(L)) < 0.1:
                L = np.eye(n) + spread * rng.standard_normal((n, n))
            F = np.zeros((2 * n, 2 * n))
            F[:n, :n] = L
            F[n:, n:] = np.linalg.inv(L).T
        else:
            B = spread * rng.standard_normal((n, n))
            F = np.eye(2 * n)
            F[n:, :n] = 0.5 * (B + B.T)
        S = S @ F
    return S

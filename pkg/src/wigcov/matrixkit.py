"""Dense real matrix primitives.

Everything here works on small dense ``numpy`` arrays (dimension up to a few
dozen).  The symmetric eigensolver is a cyclic Jacobi iteration; the other
routines (square roots, polar decomposition, canonical form of antisymmetric
matrices) are built on top of it so that the whole package only ever relies
on symmetric eigenproblems.

Inputs are never modified.
"""

import numpy as np

from .errors import (
    NotAntisymmetricError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SingularMatrixError,
    WigcovError,
)

DEFAULT_TOL = 1e-9
MAX_SWEEPS = 100
_OFF_DIAGONAL_STOP = 1e-14


def as_matrix(A, square=True):
    """Return ``A`` as a float array, checking shape and finiteness."""
    try:
        M = np.array(A, dtype=float)
    except (TypeError, ValueError) as exc:
        raise WigcovError(f"not a numeric matrix: {exc}") from None
    if M.ndim != 2:
        raise WigcovError(f"expected a 2-d matrix, got shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise WigcovError(f"expected a square matrix, got shape {M.shape}")
    if M.size == 0:
        raise WigcovError("empty matrix")
    if not np.all(np.isfinite(M)):
        raise WigcovError("matrix has non-finite entries")
    return M


def _scale(A):
    return max(1.0, np.linalg.norm(A))


def is_symmetric(A, tol=DEFAULT_TOL):
    A = np.asarray(A, dtype=float)
    return bool(np.linalg.norm(A - A.T) <= tol * _scale(A))


def is_antisymmetric(A, tol=DEFAULT_TOL):
    A = np.asarray(A, dtype=float)
    return bool(np.linalg.norm(A + A.T) <= tol * _scale(A))


def is_orthogonal(A, tol=DEFAULT_TOL):
    A = np.asarray(A, dtype=float)
    return bool(np.linalg.norm(A.T @ A - np.eye(A.shape[0])) <= tol)


def is_spd(A, tol=DEFAULT_TOL):
    """Symmetric with every eigenvalue above ``tol`` relative to the largest."""
    A = np.asarray(A, dtype=float)
    if not is_symmetric(A, tol):
        return False
    w, _ = sym_eig(A, tol)
    return bool(w[0] > tol * max(abs(w[-1]), np.finfo(float).tiny))


def check_symmetric(A, tol=DEFAULT_TOL):
    defect = np.linalg.norm(A - A.T)
    if defect > tol * _scale(A):
        raise NotSymmetricError(defect, tol)


def sym_eig(A, tol=DEFAULT_TOL):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Args:
        A: symmetric matrix (symmetry is checked with relative tolerance ``tol``).
        tol: tolerance for the symmetry check.

    Returns:
        tuple: ``(w, Q)`` with ``w`` ascending and ``Q`` orthogonal such that
        ``A = Q @ diag(w) @ Q.T``.

    Raises:
        NotSymmetricError: if ``||A - A^T||`` exceeds ``tol * max(1, ||A||)``.
    """
    A = as_matrix(A)
    check_symmetric(A, tol)
    a = 0.5 * (A + A.T)
    n = a.shape[0]
    Q = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), Q

    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < _OFF_DIAGONAL_STOP * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(diff) + 100.0 * abs(apq) == abs(diff):
                    # tiny off-diagonal entry: t = tan(angle) ~ apq / diff
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                v_p, v_q = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * v_p - s * v_q
                Q[:, q] = s * v_p + c * v_q
    else:
        raise WigcovError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], Q[:, order]


def spd_power(N, alpha, tol=DEFAULT_TOL):
    """Real power ``N**alpha`` of a symmetric positive definite matrix."""
    N = as_matrix(N)
    w, Q = sym_eig(N, tol)
    if w[0] <= tol * max(abs(w[-1]), np.finfo(float).tiny):
        raise NotPositiveDefiniteError(w[0], tol)
    R = (Q * w**alpha) @ Q.T
    return 0.5 * (R + R.T)


def spd_sqrt(N, tol=DEFAULT_TOL):
    """Symmetric positive definite square root of ``N``.

    Raises:
        NotPositiveDefiniteError: if the smallest eigenvalue is not above
            ``tol`` times the largest.
    """
    return spd_power(N, 0.5, tol)


def polar(M, tol=DEFAULT_TOL):
    """Polar decomposition ``M = H @ P``.

    ``P = (M^T M)^{1/2}`` is symmetric positive definite and
    ``H = M (M^T M)^{-1/2}`` is orthogonal.

    Raises:
        SingularMatrixError: if ``|det M| <= tol``.
    """
    M = as_matrix(M)
    det = np.linalg.det(M)
    if abs(det) <= tol:
        raise SingularMatrixError(f"matrix is singular: |det M| = {abs(det):.3e}")
    MtM = M.T @ M
    P = spd_sqrt(MtM, tol)
    H = M @ spd_power(MtM, -0.5, tol)
    return H, P


def pair_planes(candidates, partner, count):
    """Greedily split ``count`` orthogonal 2-planes out of a candidate basis.

    At each step the candidate with the largest component orthogonal to the
    planes chosen so far is taken as ``v`` (ties go to the lowest index), and
    ``partner(v)`` supplies the second direction.  Both are orthonormalised
    against everything already chosen.

    Args:
        candidates: array of shape ``(dim, m)``; columns are the candidates.
        partner: callable mapping a unit vector to its companion direction.
        count: number of planes to produce.

    Returns:
        list of ``(v, w)`` pairs of unit vectors.
    """
    dim, m = candidates.shape
    chosen = np.zeros((dim, 0))
    used = np.zeros(m, dtype=bool)
    pairs = []
    for _ in range(count):
        rest = candidates - chosen @ (chosen.T @ candidates)
        norms = np.linalg.norm(rest, axis=0)
        norms[used] = -1.0
        best = norms.max()
        if best <= 1e-8:
            raise WigcovError("plane pairing ran out of independent directions")
        idx = int(np.flatnonzero(norms >= best * (1.0 - 1e-9))[0])
        used[idx] = True
        v = rest[:, idx] / norms[idx]
        w = np.asarray(partner(v), dtype=float)
        w = w - chosen @ (chosen.T @ w)
        w = w - v * (v @ w)
        w_norm = np.linalg.norm(w)
        if w_norm <= 1e-8:
            raise WigcovError("plane pairing produced a degenerate partner direction")
        w = w / w_norm
        chosen = np.column_stack([chosen, v, w])
        pairs.append((v, w))
    return pairs


def antisymmetric_canonical(K, tol=DEFAULT_TOL):
    """Real canonical form of a nonsingular antisymmetric matrix.

    Finds an orthogonal ``O`` and ``D > 0`` (descending) such that
    ``O.T @ K @ O = [[0, diag(D)], [-diag(D), 0]]``.  The eigenvalues of
    ``K.T @ K`` are the squares ``D**2``, each twice; eigenvectors are paired
    into invariant planes ``(v, K^T v / |K^T v|)``.

    Raises:
        NotAntisymmetricError: if ``K`` is not antisymmetric within ``tol``.
        SingularMatrixError: if ``K`` has a zero (within ``tol``) singular value.
    """
    K = as_matrix(K)
    dim = K.shape[0]
    if dim % 2:
        raise WigcovError(f"antisymmetric canonical form needs even dimension, got {dim}")
    defect = np.linalg.norm(K + K.T)
    if defect > tol * _scale(K):
        raise NotAntisymmetricError(defect, tol)
    K = 0.5 * (K - K.T)
    n = dim // 2

    w, Q = sym_eig(K.T @ K, tol)
    knorm = np.linalg.norm(K)
    if knorm == 0.0 or w[0] <= (tol * knorm) ** 2:
        raise SingularMatrixError(
            f"antisymmetric matrix is singular: smallest |eigenvalue| {np.sqrt(max(w[0], 0.0)):.3e}"
        )
    candidates = Q[:, np.argsort(-w, kind="stable")]

    def partner(v):
        u = K.T @ v
        return u / np.linalg.norm(u)

    pairs = pair_planes(candidates, partner, n)
    D = np.array([v @ K @ u for v, u in pairs])
    order = np.argsort(-D, kind="stable")
    V = np.column_stack([pairs[i][0] for i in order])
    U = np.column_stack([pairs[i][1] for i in order])
    return np.hstack([V, U]), D[order]

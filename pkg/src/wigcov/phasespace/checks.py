"""Residual checks for the covariance identities on a 1-d grid.

Every check returns a nonnegative relative residual.  Maps are composed with
gridded phase-space functions by quintic spline interpolation (see
:func:`~wigcov.phasespace.grid.interpolate`).
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .. import symplectic as sp
from ..errors import DomainCoverageError, NotSymplecticError, WigcovError
from ..matrixkit import as_matrix
from .grid import PhaseSpaceFunction, _check_same_grid, compose_linear
from .metaplectic import SYMPLECTIC_TOL, leak_levels, metaplectic_apply
from .weyl import weyl_apply
from .wigner import cross_wigner, wigner

# relative level above which a sample counts as support (and a leak as fatal)
SUPPORT_LEVEL = 1e-6
DEFAULT_ORDER = 5


@dataclass(frozen=True)
class CheckResult:
    """A residual compared against a tolerance."""

    residual: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.residual <= self.tolerance)

    def to_json(self):
        return {"residual": self.residual, "tolerance": self.tolerance, "pass": self.passed}


def _relative_l2(lhs, rhs):
    scale = np.linalg.norm(rhs)
    if scale == 0.0:
        return float(np.linalg.norm(lhs))
    return float(np.linalg.norm(lhs - rhs) / scale)


def _symplectic_2x2(S, tol=SYMPLECTIC_TOL):
    S = as_matrix(S)
    if S.shape != (2, 2):
        raise WigcovError(f"expected a 2x2 matrix, got {S.shape}")
    res = sp.symplectic_residual(S)
    if res > tol * max(1.0, np.linalg.norm(S) ** 2):
        raise NotSymplecticError(res, tol)
    return S


def _check_coverage(values, grid, M):
    """Reject ``M`` when ``z -> M z`` sends the support of ``values`` off the grid.

    The support is where ``|values|`` exceeds ``SUPPORT_LEVEL`` times its
    maximum; the grid is the position range times the Wigner momentum band.
    """
    mag = np.abs(values)
    peak = mag.max()
    if peak == 0.0:
        return
    X, P = grid.mesh()
    mask = mag > SUPPORT_LEVEL * peak
    xm, pm = M @ np.array([X[mask], P[mask]])
    x_lim = (grid.x[0], grid.x[-1])
    p_lim = grid.p_band_limits
    over_x = np.maximum(x_lim[0] - xm, xm - x_lim[1]).max()
    over_p = np.maximum(p_lim[0] - pm, pm - p_lim[1]).max()
    overshoot = max(over_x, over_p)
    if overshoot > 0:
        raise DomainCoverageError(
            f"map sends the support off the grid (overshoot {overshoot:.3g}); "
            "use a larger grid or a map of smaller norm",
            overshoot,
        )


def _check_lift(after):
    # leak flags are warnings; only leaks large enough to spoil a residual abort
    edge, band = leak_levels(after.grid, after.samples)
    if max(edge, band) > SUPPORT_LEVEL:
        raise DomainCoverageError(
            f"metaplectic image does not fit on the grid (edge {edge:.2g}, band edge {band:.2g})",
            max(edge, band),
        )
    return after


def _wigner_covariance_residual(psi, M, S):
    # W psi o M against W(S_hat^{-1} psi), where psi may already be conjugated
    W = wigner(psi)
    _check_coverage(W.samples, psi.grid, np.linalg.inv(M))
    moved = _check_lift(metaplectic_apply(S, psi, inverse=True))
    rhs = wigner(moved).samples
    _check_coverage(rhs, psi.grid, M)
    return rhs


def covariance_check(psi, S, order=DEFAULT_ORDER):
    """Relative L2 residual of ``W psi o S`` against ``W(S_hat^{-1} psi)``.

    Raises:
        NotSymplecticError: if ``S`` is not a 2x2 symplectic matrix.
        DomainCoverageError: if ``S`` or its inverse pushes the support off
            the grid.
    """
    S = _symplectic_2x2(S)
    rhs = _wigner_covariance_residual(psi, S, S)
    lhs = compose_linear(wigner(psi), S, order).samples
    return _relative_l2(lhs, rhs)


def antisymplectic_covariance_check(psi, M, order=DEFAULT_ORDER):
    """Relative L2 residual of ``W psi o M`` against ``W(S_hat^{-1} conj(psi))``.

    ``M`` is antisymplectic and ``S = C M`` the associated symplectic matrix.

    Raises:
        NotSymplecticError: if ``M`` is not antisymplectic.
        DomainCoverageError: if ``M`` or its inverse pushes the support off
            the grid.
    """
    M = as_matrix(M)
    S = _symplectic_2x2(sp.reflection_C(1) @ M)
    rhs = _wigner_covariance_residual(psi.conjugate(), M, S)
    lhs = compose_linear(wigner(psi), M, order).samples
    return _relative_l2(lhs, rhs)


def weyl_pairing_check(a, psi, phi, order=DEFAULT_ORDER):
    """Deviation between ``sum (A psi) conj(phi) dx`` and ``sum a W(psi, phi) dx dp``.

    Normalised by ``max|a| ||psi|| ||phi||``.
    """
    _check_same_grid(a.grid, psi.grid, phi.grid)
    grid = a.grid
    lhs = np.sum(weyl_apply(a, psi, order).samples * np.conj(phi.samples)) * grid.dx
    rhs = np.sum(a.samples * cross_wigner(psi, phi).samples) * grid.dx * grid.dp
    scale = np.abs(a.samples).max() * psi.norm * phi.norm
    if scale == 0.0:
        return float(abs(lhs - rhs))
    return float(abs(lhs - rhs) / scale)


def weyl_covariance_defect(a, M, psi, lift, order=DEFAULT_ORDER, strict=False):
    """Distance between ``L^{-1} A L psi`` and ``Op(a o M) psi``.

    ``lift`` is the symplectic matrix whose metaplectic operator ``L`` stands
    in for a quantisation of ``M``.  For ``lift == M`` symplectic this is the
    covariance residual; otherwise it measures how far the stand-in is from
    intertwining the two operators.  ``a o M`` is resampled with edge values
    extended outward, so constant and polynomial symbols stay exact.

    With ``strict=True`` a :class:`DomainCoverageError` is raised when an
    intermediate state leaks off the grid.
    """
    _check_same_grid(a.grid, psi.grid)
    lift = _symplectic_2x2(lift)
    M = as_matrix(M)
    lifted = metaplectic_apply(lift, psi)
    inner = weyl_apply(a, lifted, order)
    back = metaplectic_apply(lift, inner, inverse=True)
    if strict:
        _check_lift(lifted)
        _check_lift(back)
    rhs = weyl_apply(compose_linear(a, M, order, mode="nearest"), psi, order).samples
    return _relative_l2(back.samples, rhs)


def weyl_covariance_check(a, S, psi, order=DEFAULT_ORDER):
    """Relative L2 residual of ``S_hat^{-1} A S_hat psi`` against ``Op(a o S) psi``.

    Raises:
        NotSymplecticError: if ``S`` is not symplectic.
        DomainCoverageError: if a metaplectic image leaks off the grid.
    """
    return weyl_covariance_defect(a, S, psi, S, order, strict=True)


@dataclass(frozen=True)
class NegativeControlReport:
    """Weyl-covariance defects of a non-symplectic map against stand-in lifts."""

    M: np.ndarray
    defects: Tuple[Tuple[str, float], ...]
    threshold: float

    @property
    def gap(self):
        return min(d for _, d in self.defects)

    @property
    def passed(self):
        return bool(self.gap > self.threshold)

    def to_json(self):
        return {
            "M": [[float(v) for v in row] for row in self.M],
            "defects": [{"lift": name, "defect": d} for name, d in self.defects],
            "gap": self.gap,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def default_stand_ins(M):
    """Symplectic matrices near ``M`` whose lifts serve as candidate quantisations.

    Includes the area-preserving rescalings ``diag(s, 1/s)`` for ``s`` between
    1 and ``|M_00|``, the orthogonal and positive polar factors of ``M``
    normalised to determinant 1, and small shears of the best rescaling.
    """
    M = as_matrix(M)
    out: List[Tuple[str, np.ndarray]] = []
    d = abs(np.linalg.det(M))
    if d == 0:
        raise WigcovError("negative control needs an invertible map")
    normalised = M / np.sqrt(d)
    if np.linalg.det(normalised) < 0:
        normalised = sp.reflection_C(1) @ normalised
    out.append(("M/sqrt|det M|", normalised))
    top = max(abs(M[0, 0]), 1.0)
    for t in np.linspace(0.0, 1.0, 5):
        s = top**t
        out.append((f"diag({s:.4g}, 1/{s:.4g})", np.diag([s, 1.0 / s])))
    s = np.sqrt(top)
    for c in (-0.25, 0.25):
        out.append((f"shear({c:g}) diag({s:.4g}, 1/{s:.4g})", np.array([[1.0, 0.0], [c, 1.0]]) @ np.diag([s, 1.0 / s])))
    return out


def weyl_negative_control(a, psi, M=None, stand_ins=None, threshold=1e-2, order=DEFAULT_ORDER):
    """Measure the Weyl-covariance defect of a non-symplectic ``M``.

    No unitary operator intertwines ``Op(a)`` and ``Op(a o M)`` for every
    symbol when ``M`` is not (anti)symplectic.  This evaluates
    :func:`weyl_covariance_defect` for metaplectic lifts of symplectic
    stand-ins and records the smallest defect as the gap.

    Args:
        a: symbol.
        psi: test state.
        M: the map, ``diag(2, 1)`` by default.
        stand_ins: list of ``(label, S)``; defaults to :func:`default_stand_ins`.
        threshold: the gap is expected to exceed this.
    """
    M = np.diag([2.0, 1.0]) if M is None else as_matrix(M)
    if stand_ins is None:
        stand_ins = default_stand_ins(M)
    defects = tuple(
        (label, weyl_covariance_defect(a, M, psi, S, order)) for label, S in stand_ins
    )
    return NegativeControlReport(M, defects, float(threshold))

"""Discrete phase-space calculus for one degree of freedom."""

from .checks import (
    CheckResult,
    NegativeControlReport,
    antisymplectic_covariance_check,
    covariance_check,
    weyl_covariance_check,
    weyl_covariance_defect,
    default_stand_ins,
    weyl_negative_control,
    weyl_pairing_check,
)
from .grid import Grid, PhaseSpaceFunction, WaveFunction, compose_linear, interpolate
from .metaplectic import (
    Chirp,
    Dilation,
    FourierJ,
    MetaplecticFactorization,
    factor_symplectic_2x2,
    metaplectic_apply,
)
from .weyl import weyl_apply, weyl_kernel
from .wigner import cross_wigner, wigner

__all__ = [
    "CheckResult",
    "Chirp",
    "Dilation",
    "FourierJ",
    "Grid",
    "MetaplecticFactorization",
    "NegativeControlReport",
    "PhaseSpaceFunction",
    "WaveFunction",
    "antisymplectic_covariance_check",
    "compose_linear",
    "covariance_check",
    "cross_wigner",
    "factor_symplectic_2x2",
    "interpolate",
    "metaplectic_apply",
    "weyl_apply",
    "weyl_covariance_check",
    "weyl_covariance_defect",
    "weyl_kernel",
    "default_stand_ins",
    "weyl_negative_control",
    "weyl_pairing_check",
    "wigner",
]

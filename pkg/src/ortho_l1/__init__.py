"""L1 norms and absolute moments of Laguerre, Hermite and Jacobi functions.

The moments are evaluated as signed sums over the zeros of the polynomial and
checked against a panel quadrature oracle.
"""

from .errors import CapabilityError, DomainError, NumericalError, OrthoL1Error, UsageError
from .families import N_MAX, FamilySpec, eval_normalized, family_identity_residual
from .oracle import OracleResult, oracle_moment, oracle_signed_moment
from .rules import (
    I_MAX,
    SignedTermLedger,
    bound,
    hermite_moment,
    hermite_norm,
    jacobi_moment,
    jacobi_norm,
    l1_norm_generic,
    laguerre_moment,
    laguerre_norm,
    laguerre_sobolev_norm,
    laguerre_top_moment,
    moment,
    norm,
)
from .zeros import ZeroSet, compute_zeros, origin_split

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "DomainError",
    "FamilySpec",
    "I_MAX",
    "NumericalError",
    "N_MAX",
    "OracleResult",
    "OrthoL1Error",
    "SignedTermLedger",
    "UsageError",
    "ZeroSet",
    "bound",
    "compute_zeros",
    "eval_normalized",
    "family_identity_residual",
    "hermite_moment",
    "hermite_norm",
    "jacobi_moment",
    "jacobi_norm",
    "l1_norm_generic",
    "laguerre_moment",
    "laguerre_norm",
    "laguerre_sobolev_norm",
    "laguerre_top_moment",
    "moment",
    "norm",
    "oracle_moment",
    "oracle_signed_moment",
    "origin_split",
]

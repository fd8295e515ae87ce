"""Partial Euler products of Dirichlet L-functions and their asymptotics."""
from .arith import (PrimeSummary, bv_sum, chebyshev_ap, chebyshev_ap_grid, divisor_sigma,
                    liouville_sum, mertens, mertens_twisted, psi_twisted, summatory, theta)
from .asymptotics import (OffStripWarning, PartialProduct, SweepReport, TermBreakdown,
                          conrad_limit_check, drh_ratio, p_x, partial_product, rhs_aim,
                          rhs_ramanujan, sqrt2_log_residual, sweep)
from .characters import (DirichletCharacter, character_from_label, characters_mod, delta_m,
                         eta, gauss_and_epsilon, gauss_sum, principal)
from .errors import (DomainError, EulerLabError, MissingZerosError, PoleError, ResourceError,
                     UndeterminedOrderError, ZeroFileError)
from .lfunctions import (LValue, TaylorData, completed, functional_residual, hurwitz_zeta,
                         l_derivative, l_value, log_l_value, vanishing_order)
from .sieve import sieve
from .special import ei, gamma, li_gamma_residual, li_power, loggamma
from .zeros import (ZeroBank, ZeroList, default_zero_bank, explicit_psi_rhs, load_zeros,
                    zero_reciprocal_sum, zero_sum_S)

__version__ = "0.1.0"

__all__ = [
    "DirichletCharacter",
    "DomainError",
    "EulerLabError",
    "LValue",
    "MissingZerosError",
    "OffStripWarning",
    "PartialProduct",
    "PoleError",
    "PrimeSummary",
    "ResourceError",
    "SweepReport",
    "TaylorData",
    "TermBreakdown",
    "UndeterminedOrderError",
    "ZeroBank",
    "ZeroFileError",
    "ZeroList",
    "bv_sum",
    "character_from_label",
    "characters_mod",
    "chebyshev_ap",
    "chebyshev_ap_grid",
    "completed",
    "conrad_limit_check",
    "default_zero_bank",
    "delta_m",
    "divisor_sigma",
    "drh_ratio",
    "ei",
    "eta",
    "explicit_psi_rhs",
    "functional_residual",
    "gamma",
    "gauss_and_epsilon",
    "gauss_sum",
    "hurwitz_zeta",
    "l_derivative",
    "l_value",
    "li_gamma_residual",
    "li_power",
    "liouville_sum",
    "load_zeros",
    "log_l_value",
    "loggamma",
    "mertens",
    "mertens_twisted",
    "p_x",
    "partial_product",
    "principal",
    "psi_twisted",
    "rhs_aim",
    "rhs_ramanujan",
    "sieve",
    "sqrt2_log_residual",
    "summatory",
    "sweep",
    "theta",
    "vanishing_order",
    "zero_reciprocal_sum",
    "zero_sum_S",
]

"""Legendre function of real degree, its degree-derivatives at zero, the
order-3 degree expansion built from them, and a verification suite that
numerically certifies every identity the closed forms rest on."""

from .core import DomainError, EvalResult
from .legendre import (
    d2p_dnu2_0,
    d3p_dnu3_0,
    dp_dnu0,
    legendre_p,
    maclaurin_p,
    nu_derivative_oracle,
)
from .polylog import dilog, dilog_integral_oracle, trilog, zeta3
from .verify import (
    DEFAULT_TOLERANCES,
    IDENTITY_IDS,
    GridSpec,
    IdentityReport,
    check_dilog_antiderivative,
    check_euler_reflection,
    check_li2_over_1mz_integral,
    check_ode_base,
    check_ode_deriv2,
    check_ode_deriv3,
    run_all,
)

__all__ = [
    "DomainError",
    "EvalResult",
    "dilog",
    "trilog",
    "zeta3",
    "dilog_integral_oracle",
    "legendre_p",
    "dp_dnu0",
    "d2p_dnu2_0",
    "d3p_dnu3_0",
    "maclaurin_p",
    "nu_derivative_oracle",
    "GridSpec",
    "IdentityReport",
    "IDENTITY_IDS",
    "DEFAULT_TOLERANCES",
    "check_ode_base",
    "check_ode_deriv2",
    "check_ode_deriv3",
    "check_euler_reflection",
    "check_dilog_antiderivative",
    "check_li2_over_1mz_integral",
    "run_all",
]

__version__ = "0.1.0"

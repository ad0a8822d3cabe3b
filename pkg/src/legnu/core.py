"""Shared result type, domain error, and the adaptive quadrature wrapper.

Everything in this package is a pure function of its arguments; there is no
shared mutable state, so concurrent calls are safe by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

__all__ = ["DomainError", "EvalResult", "adaptive_quad"]

#: Unit roundoff of binary64, used as the generic series stopping threshold.
EPS = math.ulp(1.0)

#: Hard cap on quadrature subintervals.
QUAD_SUBINTERVAL_CAP = 10_000


class DomainError(ValueError):
    """Raised when an argument lies outside a function's supported domain."""


@dataclass(frozen=True)
class EvalResult:
    """A numeric value with an a-posteriori error estimate.

    Attributes
    ----------
    value : float
        The computed value (possibly partial if not converged).
    abs_err_est : float
        Estimated absolute error of ``value``.
    converged : bool
        False when an iteration cap or tolerance target was not met; the
        value is then a best effort and must not be trusted silently.
    """

    value: float
    abs_err_est: float
    converged: bool


def adaptive_quad(f: Callable[[float], float], a: float, b: float, tol: float) -> EvalResult:
    """Integrate ``f`` over [a, b] to absolute tolerance ``tol``.

    Thin wrapper over adaptive Gauss-Kronrod quadrature with interval
    bisection (QUADPACK), capped at ``QUAD_SUBINTERVAL_CAP`` subintervals.
    Non-convergence is reported through the result flag, never raised.
    """
    if tol <= 0.0:
        raise DomainError(f"quadrature tolerance must be positive, got {tol}")
    if a == b:
        return EvalResult(0.0, 0.0, True)
    out = quad(f, a, b, epsabs=tol, epsrel=0.0, limit=QUAD_SUBINTERVAL_CAP, full_output=1)
    value, err_est = float(out[0]), float(out[1])
    ok = len(out) == 3 and err_est <= tol  # a 4th element is QUADPACK's failure message
    return EvalResult(value, err_est, ok)

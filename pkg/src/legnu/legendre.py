"""Legendre function of the first kind for real degree, and its
degree-derivatives at degree zero.

P_nu(z) is evaluated on z in (-1, 1] through the Gauss hypergeometric
series in u = (1-z)/2, whose convergence region u < 1 matches the
supported interval exactly.  The first three derivatives with respect to
the degree, taken at degree 0, have closed forms in logarithms, the
dilogarithm and the trilogarithm; a Richardson-extrapolated central
finite-difference oracle is provided to check them independently.

Supported envelope: z in (-1, 1] and |nu| <= 5.  As z -> -1 the first
degree-derivative diverges while the second tends to the finite limit
-pi^2/3; the endpoint itself is outside the domain.
"""

from __future__ import annotations

import math

from .core import EPS, DomainError, EvalResult
from .polylog import ZETA3, dilog, trilog

__all__ = [
    "legendre_p",
    "dp_dnu0",
    "d2p_dnu2_0",
    "d3p_dnu3_0",
    "maclaurin_p",
    "nu_derivative_oracle",
]

#: Largest |degree| accepted by the series evaluator.
DEGREE_ENVELOPE = 5.0

#: Series term cap; reached only for z within ~1e-4 of -1.
MAX_TERMS = 100_000

#: Step bounds accepted by the finite-difference oracle.
ORACLE_MIN_STEP = 1e-4
ORACLE_MAX_STEP = 0.1

#: Accuracy contract of the oracle per derivative order: results whose
#: tableau error estimate exceeds these are flagged as non-converged.
ORACLE_ERR_CAP = {1: 1e-8, 2: 1e-7, 3: 1e-5}

_ORACLE_LEVELS = 4  # base step plus three halvings


def _check_argument(z: float) -> float:
    z = float(z)
    if not (-1.0 < z <= 1.0):
        raise DomainError(f"argument must lie in (-1, 1], got {z}")
    return z


def _check_degree(nu: float) -> float:
    nu = float(nu)
    if not (abs(nu) <= DEGREE_ENVELOPE):
        raise DomainError(f"degree must satisfy |nu| <= {DEGREE_ENVELOPE}, got {nu}")
    return nu


def legendre_p(nu: float, z: float, tol: float = 1e-14) -> EvalResult:
    """Legendre function of the first kind, P_nu(z), for real degree.

    Sums c_k u^k with u = (1-z)/2, c_0 = 1 and
    c_{k+1} = c_k (k - nu)(k + nu + 1) / (k + 1)^2, stopping once two
    consecutive terms fall below ``tol`` relative to the partial sum.
    For integer degree the series terminates and the usual polynomials
    are recovered exactly; P_nu(1) = 1 for every degree.

    Parameters
    ----------
    nu : float
        Degree, |nu| <= 5.
    z : float
        Argument in (-1, 1].
    tol : float
        Relative truncation tolerance.

    Returns
    -------
    EvalResult
        converged is False when the term cap is reached (z within about
        1e-4 of -1); the value is then the partial sum.
    """
    nu = _check_degree(nu)
    z = _check_argument(z)
    if tol <= 0.0:
        raise DomainError(f"series tolerance must be positive, got {tol}")
    u = 0.5 * (1.0 - z)
    total = 1.0
    abs_total = 1.0
    coeff = 1.0
    upow = 1.0
    small_run = 0
    for k in range(MAX_TERMS):
        coeff *= (k - nu) * (k + nu + 1.0) / ((k + 1.0) * (k + 1.0))
        upow *= u
        term = coeff * upow
        total += term
        abs_total += abs(term)
        if abs(term) <= tol * abs(total):
            small_run += 1
            if small_run >= 2:
                # tail is geometric-ish with ratio u; add a rounding
                # allowance that grows with the summation length
                tail = abs(term) * u / (1.0 - u)
                est = tail + EPS * abs_total * (1.0 + math.sqrt(k + 1.0))
                return EvalResult(total, est, True)
        else:
            small_run = 0
    return EvalResult(total, abs(term), False)


def dp_dnu0(z: float) -> float:
    """First degree-derivative of P_nu(z) at degree 0: ln((z+1)/2)."""
    z = _check_argument(z)
    return math.log1p(0.5 * (z - 1.0))


def d2p_dnu2_0(z: float) -> float:
    """Second degree-derivative of P_nu(z) at degree 0: -2 Li2((1-z)/2).

    Non-positive on the whole interval, zero only at z = 1, and tending
    to -pi^2/3 as z -> -1.
    """
    z = _check_argument(z)
    return -2.0 * dilog(0.5 * (1.0 - z)).value + 0.0


def d3p_dnu3_0(z: float) -> float:
    """Third degree-derivative of P_nu(z) at degree 0.

    With v = (z+1)/2:
    12 Li3(v) - 6 ln(v) Li2(v) - pi^2 ln(v) - 12 zeta(3),
    which vanishes at z = 1 where v = 1.
    """
    z = _check_argument(z)
    v = 0.5 * (z + 1.0)
    lv = math.log(v)
    return (
        12.0 * trilog(v).value
        - 6.0 * lv * dilog(v).value
        - math.pi * math.pi * lv
        - 12.0 * ZETA3
    ) + 0.0


def maclaurin_p(nu: float, z: float, order: int = 3) -> float:
    """Degree-expansion approximant of P_nu(z) about degree 0.

    Sums nu^k / k! times the k-th degree-derivative at 0 for k up to
    ``order``, using the closed forms above for the coefficients.  The
    order-3 truncation error scales like nu^4.

    Parameters
    ----------
    order : int
        Truncation order, 0 through 3.
    """
    nu = _check_degree(nu)
    z = _check_argument(z)
    if order not in (0, 1, 2, 3):
        raise DomainError(f"truncation order must be 0..3, got {order}")
    total = 1.0
    if order >= 1:
        total += nu * dp_dnu0(z)
    if order >= 2:
        total += nu * nu / 2.0 * d2p_dnu2_0(z)
    if order >= 3:
        total += nu**3 / 6.0 * d3p_dnu3_0(z)
    return total


def _stencil(f, order: int, h: float) -> float:
    """Central difference of the given order about 0, error O(h^2)."""
    if order == 1:
        return (f(h) - f(-h)) / (2.0 * h)
    if order == 2:
        return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h)
    # order == 3: 4-point antisymmetric stencil
    return (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h**3)


# Sum of |stencil weights| over h^order; scales the roundoff floor.
_STENCIL_WEIGHT_SUM = {1: 1.0, 2: 4.0, 3: 3.0}


def nu_derivative_oracle(z: float, order: int, h: float = 0.02) -> EvalResult:
    """Degree-derivative of P_nu(z) at degree 0 by finite differences.

    Applies the central stencil of the requested order to `legendre_p`
    in the degree about 0, then removes the O(h^2), O(h^4), ... error
    terms by Richardson extrapolation over three step halvings.  Kept
    free of the closed forms so it can certify them.

    Parameters
    ----------
    z : float
        Argument in (-1, 1].
    order : int
        Derivative order, 1 through 3.
    h : float
        Base step, in [1e-4, 0.1].

    Returns
    -------
    EvalResult
        abs_err_est combines the extrapolation-tableau disagreement with
        the stencil roundoff floor; converged is False when the estimate
        exceeds the order's accuracy cap (`ORACLE_ERR_CAP`).
    """
    z = _check_argument(z)
    if order not in (1, 2, 3):
        raise DomainError(f"oracle derivative order must be 1, 2 or 3, got {order}")
    h = float(h)
    if not (ORACLE_MIN_STEP <= h <= ORACLE_MAX_STEP):
        raise DomainError(
            f"oracle step must lie in [{ORACLE_MIN_STEP}, {ORACLE_MAX_STEP}], got {h}"
        )

    fmax = 1.0

    def f(nu: float) -> float:
        nonlocal fmax
        val = legendre_p(nu, z, tol=1e-15).value
        fmax = max(fmax, abs(val))
        return val

    m = _ORACLE_LEVELS - 1
    tableau = [[0.0] * _ORACLE_LEVELS for _ in range(_ORACLE_LEVELS)]
    for i in range(_ORACLE_LEVELS):
        tableau[i][0] = _stencil(f, order, h / 2.0**i)
        for j in range(1, i + 1):
            weight = 4.0**j
            tableau[i][j] = (weight * tableau[i][j - 1] - tableau[i - 1][j - 1]) / (weight - 1.0)

    value = tableau[m][m]
    h_min = h / 2.0**m
    noise_floor = 2.0 * _STENCIL_WEIGHT_SUM[order] * EPS * fmax / h_min**order
    est = max(
        abs(tableau[m][m] - tableau[m][m - 1]),
        abs(tableau[m][m] - tableau[m - 1][m - 1]),
        noise_floor,
    )
    return EvalResult(value, est, est <= ORACLE_ERR_CAP[order])

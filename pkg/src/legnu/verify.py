"""Numerical certification of the identities behind the closed forms.

Six independent checks, each producing an `IdentityReport` over a sample
grid:

* ``ode_base``               -- P_nu satisfies the Legendre equation;
* ``ode_deriv2``             -- the order-2 closed form satisfies its
                                twice-degree-differentiated equation, and
                                its first integral holds analytically;
* ``ode_deriv3``             -- same for the order-3 closed form;
* ``euler_reflection``       -- Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x);
* ``dilog_antiderivative``   -- integral of Li2 matches its antiderivative;
* ``li2_over_1mz_integral``  -- integral of Li2(t)/(1-t) matches its
                                antiderivative (reduced and log forms).

z-derivatives in the ODE checks use 5-point central stencils, so those
residuals are finite-difference noise, not identity violations; the
first-integral checks are stencil-free and tight.  Sub-checks with their
own bound (first integrals at 1e-10, log-form spot intervals at 1e-8) are
folded into the parent report rescaled into report-tolerance units, so
``passed == (max_residual <= tolerance)`` always holds.

All checks are deterministic and side-effect-free; a run repeated on the
same grid reproduces residual statistics bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import DomainError, adaptive_quad
from .legendre import d2p_dnu2_0, d3p_dnu3_0, dp_dnu0, legendre_p
from .polylog import PI2_OVER_6, dilog, trilog

__all__ = [
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
    "first_integral_residuals",
    "dilog_antiderivative_residual",
    "li2_ratio_antiderivative_residual",
    "run_all",
    "report_lines",
    "reports_to_json",
]

IDENTITY_IDS = (
    "ode_base",
    "ode_deriv2",
    "ode_deriv3",
    "euler_reflection",
    "dilog_antiderivative",
    "li2_over_1mz_integral",
)

DEFAULT_TOLERANCES = {
    "ode_base": 1e-6,
    "ode_deriv2": 1e-6,
    "ode_deriv3": 1e-6,
    "euler_reflection": 1e-12,
    "dilog_antiderivative": 1e-10,
    "li2_over_1mz_integral": 1e-9,
}

# Fixed bounds of the folded sub-checks.
FIRST_INTEGRAL_BOUND = 1e-10
LOG_FORM_SPOT_BOUND = 1e-8

# ODE stencil steps; the order-3 closed form needs the finer step to keep
# truncation below 1e-6 near z = -0.9.
_ODE_STEP = 1e-3
_ODE_STEP_DERIV3 = 5e-4

# ODE grids are bounded away from +-1 to avoid 1/(1-z^2) amplification.
_ODE_GRID_LIMIT = 0.95

_FIRST_INTEGRAL_POINTS = np.linspace(-0.95, 0.95, 50)
_LOG_FORM_SPOT_INTERVALS = ((0.2, 0.5), (0.3, 0.7), (0.25, 0.75))


@dataclass(frozen=True)
class GridSpec:
    """An inclusive sampled range with at least two points.

    spacing may be "uniform" or "chebyshev" (Chebyshev-Lobatto points,
    clustered toward the endpoints); points are always returned ascending
    with the endpoints hit exactly.
    """

    start: float
    end: float
    count: int
    spacing: str = "uniform"

    def __post_init__(self):
        if not (self.start < self.end):
            raise DomainError(f"grid requires start < end, got [{self.start}, {self.end}]")
        if self.count < 2:
            raise DomainError(f"grid requires count >= 2, got {self.count}")
        if self.spacing not in ("uniform", "chebyshev"):
            raise DomainError(f"unknown grid spacing {self.spacing!r}")

    def points(self) -> np.ndarray:
        if self.spacing == "uniform":
            return np.linspace(self.start, self.end, self.count)
        mid = 0.5 * (self.start + self.end)
        half = 0.5 * (self.end - self.start)
        pts = mid - half * np.cos(np.pi * np.arange(self.count) / (self.count - 1))
        pts[0] = self.start
        pts[-1] = self.end
        return pts


@dataclass(frozen=True)
class IdentityReport:
    """Residual statistics of one identity over one sample grid."""

    identity_id: str
    samples: int
    max_residual: float
    mean_residual: float
    argmax_location: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "argmax_location": self.argmax_location,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _make_report(identity_id: str, locations: Sequence[float], residuals: Sequence[float],
                 tolerance: float) -> IdentityReport:
    if len(residuals) < 2:
        raise ValueError(f"{identity_id}: need at least 2 residual samples, got {len(residuals)}")
    res = np.asarray(residuals, dtype=float)
    imax = int(np.argmax(res))
    return IdentityReport(
        identity_id=identity_id,
        samples=len(res),
        max_residual=float(res[imax]),
        mean_residual=float(np.mean(res)),
        argmax_location=float(locations[imax]),
        tolerance=float(tolerance),
        passed=bool(res[imax] <= tolerance),
    )


# ---------------------------------------------------------------------------
# stencils and analytic derivatives of the closed forms

def _d1_5pt(values: Sequence[float], h: float) -> float:
    fm2, fm1, _, fp1, fp2 = values
    return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)


def _d2_5pt(values: Sequence[float], h: float) -> float:
    fm2, fm1, f0, fp1, fp2 = values
    return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)


def _d2p_closed_dz(z: float) -> float:
    """Analytic z-derivative of the order-2 closed form: -2 ln((z+1)/2) / (1-z)."""
    return -2.0 * dp_dnu0(z) / (1.0 - z)


def _d3p_closed_dz(z: float) -> float:
    """Analytic z-derivative of the order-3 closed form."""
    v = 0.5 * (z + 1.0)
    return (6.0 * dilog(v).value + 6.0 * math.log(v) * math.log1p(-v) - math.pi**2) / (2.0 * v)


def first_integral_residuals(order: int, zs: Iterable[float]) -> np.ndarray:
    """Residuals of the once-integrated equations, evaluated analytically.

    order 2:  (1-z^2) d/dz [order-2 form]  =  -2 (z+1) ln((z+1)/2)
    order 3:  (1-z^2) d/dz [order-3 form]  =   6 (z-1) Li2((1-z)/2)

    Both integration constants vanish, pinned by the value 1 at z = 1.
    No finite differences are involved, so residuals sit at rounding level.
    """
    if order not in (2, 3):
        raise DomainError(f"first-integral order must be 2 or 3, got {order}")
    out = []
    for z in zs:
        z = float(z)
        w = 1.0 - z * z
        if order == 2:
            out.append(abs(w * _d2p_closed_dz(z) - (-2.0 * (z + 1.0) * dp_dnu0(z))))
        else:
            out.append(abs(w * _d3p_closed_dz(z) - 6.0 * (z - 1.0) * dilog(0.5 * (1.0 - z)).value))
    return np.asarray(out)


def _check_ode_grid(grid: GridSpec) -> np.ndarray:
    if grid.start < -_ODE_GRID_LIMIT or grid.end > _ODE_GRID_LIMIT:
        raise DomainError(
            f"ODE residual grids must lie within [-{_ODE_GRID_LIMIT}, {_ODE_GRID_LIMIT}], "
            f"got [{grid.start}, {grid.end}]"
        )
    return grid.points()


# ---------------------------------------------------------------------------
# the six checks

def check_ode_base(nu: float, grid: GridSpec, tolerance: float | None = None) -> IdentityReport:
    """Residual of the Legendre equation on P_nu over the grid.

    Points where the series fails to converge are excluded (reflected in
    the report's sample count), never silently included.
    """
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCES["ode_base"]
    pts = _check_ode_grid(grid)
    h = _ODE_STEP
    locations, residuals = [], []
    for z in pts:
        z = float(z)
        evals = [legendre_p(nu, z + k * h, tol=1e-15) for k in (-2, -1, 0, 1, 2)]
        if not all(e.converged for e in evals):
            continue
        vals = [e.value for e in evals]
        resid = (1.0 - z * z) * _d2_5pt(vals, h) - 2.0 * z * _d1_5pt(vals, h) \
            + nu * (nu + 1.0) * vals[2]
        locations.append(z)
        residuals.append(abs(resid))
    return _make_report("ode_base", locations, residuals, tolerance)


def _check_ode_closed_form(identity_id: str, f, rhs, step: float, fi_order: int,
                           grid: GridSpec, tolerance: float) -> IdentityReport:
    pts = _check_ode_grid(grid)
    locations, residuals = [], []
    for z in pts:
        z = float(z)
        vals = [f(z + k * step) for k in (-2, -1, 0, 1, 2)]
        resid = (1.0 - z * z) * _d2_5pt(vals, step) - 2.0 * z * _d1_5pt(vals, step) - rhs(z)
        locations.append(z)
        residuals.append(abs(resid))
    # fold the stencil-free first-integral sub-check, rescaled so that it
    # fails the report exactly when it exceeds its own fixed bound
    scale = tolerance / FIRST_INTEGRAL_BOUND
    for z, r in zip(_FIRST_INTEGRAL_POINTS, first_integral_residuals(fi_order, _FIRST_INTEGRAL_POINTS)):
        locations.append(float(z))
        residuals.append(float(r) * scale)
    return _make_report(identity_id, locations, residuals, tolerance)


def check_ode_deriv2(grid: GridSpec, tolerance: float | None = None) -> IdentityReport:
    """Residual of the twice-degree-differentiated equation on the order-2
    closed form, with its first integral checked analytically at 1e-10."""
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCES["ode_deriv2"]
    return _check_ode_closed_form(
        "ode_deriv2",
        d2p_dnu2_0,
        lambda z: -2.0 - 2.0 * dp_dnu0(z),
        _ODE_STEP,
        2,
        grid,
        tolerance,
    )


def check_ode_deriv3(grid: GridSpec, tolerance: float | None = None) -> IdentityReport:
    """Residual of the thrice-degree-differentiated equation on the order-3
    closed form, with its first integral checked analytically at 1e-10."""
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCES["ode_deriv3"]
    return _check_ode_closed_form(
        "ode_deriv3",
        d3p_dnu3_0,
        lambda z: -6.0 * dp_dnu0(z) + 6.0 * dilog(0.5 * (1.0 - z)).value,
        _ODE_STEP_DERIV3,
        3,
        grid,
        tolerance,
    )


def check_euler_reflection(grid: GridSpec, tolerance: float | None = None) -> IdentityReport:
    """Residual of Li2(x) + Li2(1-x) - pi^2/6 + ln(x) ln(1-x) over the grid."""
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCES["euler_reflection"]
    if grid.start <= 0.0 or grid.end >= 1.0:
        raise DomainError(f"reflection grid must lie within (0, 1), got [{grid.start}, {grid.end}]")
    pts = grid.points()
    residuals = [
        abs(dilog(float(x)).value + dilog(1.0 - float(x)).value
            - PI2_OVER_6 + math.log(float(x)) * math.log1p(-float(x)))
        for x in pts
    ]
    return _make_report("euler_reflection", [float(x) for x in pts], residuals, tolerance)


# ---------------------------------------------------------------------------
# quadrature-vs-antiderivative checks

#: Quadrature runs this much tighter than the agreement tolerance.
_QUAD_TOL_FRACTION = 0.01


def _li2_antideriv(t: float) -> float:
    """Antiderivative of Li2:  t Li2(t) + (t-1) ln(1-t) - t  (0 at t = 0)."""
    if t == 0.0:
        return 0.0
    return t * dilog(t).value + (t - 1.0) * math.log1p(-t) - t


def _li2_ratio_antideriv(t: float, form: str) -> float:
    """Antiderivative of Li2(t)/(1-t), reduced or log form."""
    y = 1.0 - t
    ly = math.log1p(-t)
    if form == "reduced":
        return 2.0 * trilog(y).value - ly * dilog(y).value - PI2_OVER_6 * ly
    # log form: equivalent modulo the reflection identity, kept as an
    # independent spot-check target
    return (
        2.0 * trilog(y).value
        - ly * dilog(t).value
        - 2.0 * ly * dilog(y).value
        - math.log(t) * ly * ly
    )


def _quad_vs_antideriv(integrand, antideriv, a: float, b: float, tol: float) -> float:
    """|quadrature - antiderivative difference| on [a, b]; a failed
    quadrature is scored at 10x tolerance so it can never pass silently."""
    if a == b:
        return 0.0
    q = adaptive_quad(integrand, a, b, max(1e-13, _QUAD_TOL_FRACTION * tol))
    resid = abs(q.value - (antideriv(b) - antideriv(a)))
    if not q.converged:
        resid = max(resid, 10.0 * tol)
    return resid


def dilog_antiderivative_residual(a: float, b: float, tol: float = 1e-10) -> float:
    """Quadrature-vs-antiderivative residual for Li2 on [a, b] in [0, 0.999]."""
    for t in (a, b):
        if not (0.0 <= t <= 0.999):
            raise DomainError(f"integration endpoints must lie in [0, 0.999], got {t}")
    return _quad_vs_antideriv(lambda t: dilog(t).value, _li2_antideriv, a, b, tol)


def li2_ratio_antiderivative_residual(a: float, b: float, tol: float = 1e-9,
                                      form: str = "reduced") -> float:
    """Quadrature-vs-antiderivative residual for Li2(t)/(1-t) on [a, b].

    ``form`` selects the reduced antiderivative or the log form; the log
    form additionally needs a > 0.  Endpoints above 0.999 are rejected
    (the antiderivative's logarithms degrade there).
    """
    if form not in ("reduced", "log"):
        raise DomainError(f"unknown antiderivative form {form!r}")
    for t in (a, b):
        if not (0.0 <= t <= 0.999):
            raise DomainError(f"integration endpoints must lie in [0, 0.999], got {t}")
    if form == "log" and a <= 0.0:
        raise DomainError("log-form antiderivative requires a > 0")
    return _quad_vs_antideriv(
        lambda t: dilog(t).value / (1.0 - t),
        lambda t: _li2_ratio_antideriv(t, form),
        a, b, tol,
    )


def _interval_check(identity_id: str, grid: GridSpec, tol: float, residual_fn,
                    extra: Sequence[tuple[float, float]] = ()) -> IdentityReport:
    pts = grid.points()
    locations, residuals = [], []
    for a, b in zip(pts[:-1], pts[1:]):
        locations.append(0.5 * (float(a) + float(b)))
        residuals.append(residual_fn(float(a), float(b)))
    for loc, r in extra:
        locations.append(loc)
        residuals.append(r)
    return _make_report(identity_id, locations, residuals, tol)


def check_dilog_antiderivative(grid: GridSpec, tol: float | None = None) -> IdentityReport:
    """Integral of Li2 over consecutive grid intervals vs its antiderivative."""
    if tol is None:
        tol = DEFAULT_TOLERANCES["dilog_antiderivative"]
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if grid.start < 0.0 or grid.end > 0.999:
        raise DomainError(
            f"antiderivative grid must lie within [0, 0.999], got [{grid.start}, {grid.end}]"
        )
    return _interval_check(
        "dilog_antiderivative", grid, tol,
        lambda a, b: dilog_antiderivative_residual(a, b, tol),
    )


def check_li2_over_1mz_integral(grid: GridSpec, tol: float | None = None) -> IdentityReport:
    """Integral of Li2(t)/(1-t) over grid intervals vs the reduced
    antiderivative, plus three fixed log-form spot intervals at 1e-8."""
    if tol is None:
        tol = DEFAULT_TOLERANCES["li2_over_1mz_integral"]
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if grid.start < 0.0 or grid.end > 0.999:
        raise DomainError(
            f"integral grid endpoints above 0.999 are rejected, got [{grid.start}, {grid.end}]"
        )
    scale = tol / LOG_FORM_SPOT_BOUND
    extra = [
        (0.5 * (a + b),
         li2_ratio_antiderivative_residual(a, b, LOG_FORM_SPOT_BOUND, form="log") * scale)
        for a, b in _LOG_FORM_SPOT_INTERVALS
    ]
    return _interval_check(
        "li2_over_1mz_integral", grid, tol,
        lambda a, b: li2_ratio_antiderivative_residual(a, b, tol, form="reduced"),
        extra=extra,
    )


# ---------------------------------------------------------------------------
# suite driver and serialization

_DEFAULT_ODE_GRID = GridSpec(-0.9, 0.9, 101)
_DEFAULT_EULER_GRID = GridSpec(0.001, 0.999, 101)
_DEFAULT_ANTIDERIV_GRID = GridSpec(0.0, 0.99, 11)
_DEFAULT_RATIO_GRID = GridSpec(0.05, 0.95, 11)

#: Degree exercised by the base ODE check (non-polynomial on purpose).
_DEFAULT_BASE_DEGREE = 0.5


def _resolve_tolerances(tolerances: Mapping[str, float] | None) -> dict[str, float]:
    resolved = dict(DEFAULT_TOLERANCES)
    if not tolerances:
        return resolved
    for key, value in tolerances.items():
        if key in resolved:
            resolved[key] = float(value)
            continue
        matches = [name for name in IDENTITY_IDS if name.startswith(key)]
        if len(matches) != 1:
            raise ValueError(
                f"unknown identity {key!r}; expected one of {', '.join(IDENTITY_IDS)} "
                f"or a unique prefix"
            )
        resolved[matches[0]] = float(value)
    return resolved


def run_all(tolerances: Mapping[str, float] | None = None) -> list[IdentityReport]:
    """Run every identity check on its default grid.

    ``tolerances`` overrides per-identity tolerances by id or unique id
    prefix (e.g. ``{"euler": 1e-13}``); anything not named keeps its
    default.  Always returns one report per identity, in `IDENTITY_IDS`
    order; a failed identity never aborts the rest.
    """
    tols = _resolve_tolerances(tolerances)
    return [
        check_ode_base(_DEFAULT_BASE_DEGREE, _DEFAULT_ODE_GRID, tols["ode_base"]),
        check_ode_deriv2(_DEFAULT_ODE_GRID, tols["ode_deriv2"]),
        check_ode_deriv3(_DEFAULT_ODE_GRID, tols["ode_deriv3"]),
        check_euler_reflection(_DEFAULT_EULER_GRID, tols["euler_reflection"]),
        check_dilog_antiderivative(_DEFAULT_ANTIDERIV_GRID, tols["dilog_antiderivative"]),
        check_li2_over_1mz_integral(_DEFAULT_RATIO_GRID, tols["li2_over_1mz_integral"]),
    ]


def report_lines(reports: Iterable[IdentityReport]) -> list[str]:
    """One fixed-layout text record per report."""
    return [
        f"{r.identity_id:<22s} {'pass' if r.passed else 'FAIL'}  "
        f"samples={r.samples}  max={r.max_residual!r}  mean={r.mean_residual!r}  "
        f"argmax={r.argmax_location!r}  tol={r.tolerance!r}"
        for r in reports
    ]


def reports_to_json(reports: Iterable[IdentityReport]) -> str:
    """All reports as one JSON document with a ``records`` array."""
    return json.dumps({"records": [r.to_dict() for r in reports]}, indent=2)

"""Locating the optimal cutoff and certifying the sign of dE/da on grids."""
from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .measure import check_dimension
from .mse import mse_derivative, mse_excess, mse_total

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
METHODS = ("golden_section", "derivative_bisection", "grid_refine")


@dataclass(frozen=True)
class OptimizationResult:
    n: int
    a_star: float
    e_star: float
    method: str
    evaluations: int
    bracket: tuple[float, float]

    def as_dict(self):
        return {
            "n": self.n,
            "a_star": self.a_star,
            "e_star": self.e_star,
            "method": self.method,
            "evaluations": self.evaluations,
            "bracket": list(self.bracket),
        }


class _Counted:
    def __init__(self, f):
        self.f = f
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        return self.f(x)


def cutoff_grid(step, lo=0.0, hi=2.0, include_lo=True):
    """Points lo + k*step below ``hi``; built from integer multiples to avoid drift."""
    count = int(math.floor((hi - lo) / step + 1e-9))
    ks = np.arange(0 if include_lo else 1, count + 1)
    pts = lo + ks * step
    return pts[pts < hi - 1e-12 * step]


def golden_section(f, lo, hi, tol):
    """Shrink [lo, hi] around a minimum of unimodal ``f`` until it is at most ``tol`` wide.

    Ties keep the left part, so a bracket whose minimum sits at ``lo``
    collapses onto ``lo``.
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
    return lo, hi


def _derivative_bisection(n, lo, hi, tol):
    deriv = _Counted(lambda a: mse_derivative(n, a))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if deriv(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return lo, hi, deriv.calls


def _polish_interior(n, lo, hi, tol):
    """Bisect on the sign of dE/da around an interior bracket.

    Value comparisons cannot resolve a flat minimum much below 1e-8; the
    derivative crosses zero linearly there and pins the root to rounding
    level.  Returns None when no sign change brackets the minimum.
    """
    pad = max(10.0 * (hi - lo), 1e-6)
    a, b = lo - pad, hi + pad
    if a <= 1e-6 or b >= 2.0:
        return None
    deriv = _Counted(lambda x: mse_derivative(n, x))
    if not (deriv(a) < 0.0 < deriv(b)):
        return None
    while b - a > 0.5 * tol:
        mid = 0.5 * (a + b)
        if deriv(mid) > 0.0:
            b = mid
        else:
            a = mid
    return a, b, deriv.calls


def _grid_refine(f, lo, hi, tol, points=11):
    while hi - lo > tol:
        xs = np.linspace(lo, hi, points)
        best = int(np.argmin([f(x) for x in xs]))
        lo, hi = xs[max(best - 1, 0)], xs[min(best + 1, points - 1)]
    return float(lo), float(hi)


def minimize_cutoff(n, tol=1e-8, method="golden_section", grid_step=0.01):
    """Minimize a -> E(n, a) over [0, 2).

    A coarse scan with ``grid_step`` picks the best grid point; the chosen
    method then refines the bracket formed by its neighbours.  The objective
    is E - 1 (see :func:`mse_excess`), which orders cutoffs like E but
    resolves much finer differences near a flat minimum.  An interior
    golden-section bracket is then tightened by bisection on the sign of
    dE/da.  When the final bracket starts at 0 and E rises across it, the
    result snaps to a = 0.
    """
    n = check_dimension(n)
    if not 1e-12 <= tol <= 1e-2:
        raise DomainError(f"tol must lie in [1e-12, 1e-2], got {tol}")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if method == "derivative_bisection" and n < 4:
        raise DomainError("derivative bisection needs n >= 4")

    objective = _Counted(lambda a: mse_excess(n, a))
    grid = cutoff_grid(grid_step)
    values = [objective(a) for a in grid]
    i = int(np.argmin(values))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[i + 1]) if i + 1 < len(grid) else 2.0

    extra = 0
    if method == "golden_section":
        lo, hi = golden_section(objective, lo, hi, tol)
        if lo > 0.0:
            polished = _polish_interior(n, lo, hi, tol)
            if polished is not None:
                lo, hi, extra = polished
    elif method == "derivative_bisection":
        lo, hi, extra = _derivative_bisection(n, lo, hi, tol)
    else:
        lo, hi = _grid_refine(objective, lo, hi, tol)

    a_star = 0.5 * (lo + hi)
    if lo == 0.0 and objective(0.0) <= objective(a_star) <= objective(hi):
        a_star = 0.0
    return OptimizationResult(
        n=n,
        a_star=a_star,
        e_star=mse_total(n, a_star),
        method=method,
        evaluations=objective.calls + extra,
        bracket=(lo, hi),
    )


def monotonicity_failures(n, grid_step=0.01):
    """Grid cutoffs in [step, 2 - step] where dE/da is not strictly positive."""
    n = check_dimension(n, minimum=3)
    if not 1e-4 <= grid_step <= 0.1:
        raise DomainError(f"grid_step must lie in [1e-4, 0.1], got {grid_step}")
    grid = cutoff_grid(grid_step, include_lo=False)
    grid = grid[grid <= 2.0 - grid_step * (1 - 1e-9)]
    return [float(a) for a in grid if not mse_derivative(n, a) > 0.0]


def certify_monotonicity(n, grid_step=0.01):
    return not monotonicity_failures(n, grid_step)

"""Projection of the uniform sphere measure onto the symmetry axis.

Coordinates are in the left-sphere frame: the left sphere is centered at 0
and the right sphere at 2, so a cutoff ``a`` places the separating
hyperplane at ``x = 1 - a``.  The symmetric frame, with centers at -1 and
+1, is this frame shifted by -1.

The projected density on ``[-1, 1]`` is ``A_n (1 - x^2)^((n-3)/2)``.  All
quadrature runs in the angle ``x = cos(theta)``, where the integrand becomes
``A_n sin(theta)^(n-2)``: smooth on ``[0, pi]`` for every ``n >= 2``.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import ConvergenceError, DomainError, EmptyClusterError
from .quadrature import integrate

SERIES_TERM_TOL = 1e-13
SERIES_MAX_TERMS = 10_000
MONOTONE_GUARD = 1e-12


@dataclass(frozen=True)
class GeometryParams:
    """Dimension of the ambient space; the frame is always the left-sphere frame."""

    n: int

    def __post_init__(self):
        check_dimension(self.n)

    @staticmethod
    def to_rho_frame(x):
        return x - 1.0

    @staticmethod
    def to_left_frame(x):
        return x + 1.0


@dataclass(frozen=True)
class MassPair:
    m_minus: float
    m_plus: float


@dataclass(frozen=True)
class CentroidPair:
    """Cluster means along the axis, left-sphere frame.

    ``c_minus`` is None when the minus cluster is empty (cutoff 2).
    """

    c_minus: float | None
    c_plus: float

    @property
    def minus_empty(self):
        return self.c_minus is None

    @property
    def rho_minus(self):
        return None if self.c_minus is None else self.c_minus - 1.0

    @property
    def rho_plus(self):
        return self.c_plus - 1.0


def check_dimension(n, minimum=2):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"dimension must be an integer, got {n!r}")
    if n < minimum:
        raise DomainError(f"dimension must be >= {minimum}, got {n}")
    return int(n)


def fold_cutoff(a):
    """Map a cutoff into [0, 2]; negative offsets fold by reflection symmetry."""
    a = float(a)
    if not math.isfinite(a) or abs(a) > 2.0:
        raise DomainError(f"cutoff must lie in [-2, 2], got {a}")
    return abs(a)


def _half_width(a):
    # 2a - a^2, written to stay accurate near both endpoints
    return a * (2.0 - a)


def _angles(a):
    """Angles (theta0, phi1) with cos(theta0) = 1 - a and phi1 = pi - theta0."""
    ra, rb = math.sqrt(a), math.sqrt(2.0 - a)
    return 2.0 * math.atan2(ra, rb), 2.0 * math.atan2(rb, ra)


@lru_cache(maxsize=None)
def normalization_constant(n):
    """A_n = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)).

    The Gamma ratio follows the recursion R(n+2) = R(n) n/(n-1) from
    R(2) = 1/sqrt(pi) and R(3) = sqrt(pi)/2, so no general Gamma is needed.
    """
    n = check_dimension(n)
    if n % 2 == 0:
        ratio, k = 1.0 / math.sqrt(math.pi), 2
    else:
        ratio, k = math.sqrt(math.pi) / 2.0, 3
    while k < n:
        ratio *= k / (k - 1)
        k += 2
    return ratio / math.sqrt(math.pi)


def _density_in_angle(n):
    amp = normalization_constant(n)
    power = n - 2
    if power == 0:
        return lambda t: np.full_like(t, amp)
    return lambda t: amp * np.sin(t) ** power


def mu_integral(n, g, a, part="minus", abs_tol=1e-13, rel_tol=1e-13):
    """Integrate ``g(x) dmu_n(x)`` over one piece of ``[-1, 1]``.

    ``part`` selects ``[-1, 1-a]`` ("minus"), ``[1-a, 1]`` ("plus") or the
    whole interval ("full"). ``g`` must accept numpy arrays.  The special
    part "plus_gap" ignores ``g`` and integrates ``1 - x`` over ``[1-a, 1]``.
    """
    n = check_dimension(n)
    dens = _density_in_angle(n)
    theta0, phi1 = _angles(a)
    if part == "minus":
        # phi = pi - theta, x = -cos(phi)
        return integrate(lambda p: g(-np.cos(p)) * dens(p), 0.0, phi1, abs_tol, rel_tol)
    if part == "plus":
        return integrate(lambda t: g(np.cos(t)) * dens(t), 0.0, theta0, abs_tol, rel_tol)
    if part == "plus_gap":
        # 1 - x over [1-a, 1], as 2 sin^2(theta/2) to keep it exact near theta = 0
        return integrate(lambda t: 2.0 * np.sin(0.5 * t) ** 2 * dens(t), 0.0, theta0, abs_tol, rel_tol)
    if part == "full":
        return integrate(lambda t: g(np.cos(t)) * dens(t), 0.0, math.pi, abs_tol, rel_tol)
    raise ValueError(f"unknown part {part!r}")


def mass_minus_quadrature(n, a):
    """M_n^-(a) by quadrature for any n (the n = 3 closed form is bypassed)."""
    a = fold_cutoff(a)
    n = check_dimension(n)
    dens = _density_in_angle(n)
    _, phi1 = _angles(a)
    # positive integrand: a relative criterion keeps masses near a = 2 accurate
    return integrate(dens, 0.0, phi1, abs_tol=0.0, rel_tol=1e-14)


def mass_minus(n, a):
    """Projected mass of the left sphere below the hyperplane, M_n^-(a)."""
    n = check_dimension(n)
    a = fold_cutoff(a)
    if n == 3:
        return (2.0 - a) / 2.0
    if a == 0.0:
        return 1.0
    if a == 2.0:
        return 0.0
    return mass_minus_quadrature(n, a)


def masses(n, a):
    m = mass_minus(n, a)
    return MassPair(m, 2.0 - m)


def first_moment_minus(n, a):
    """Integral of x dmu_n over [-1, 1-a]: -(A_n/(n-1)) (2a - a^2)^((n-1)/2)."""
    n = check_dimension(n)
    a = fold_cutoff(a)
    return -normalization_constant(n) / (n - 1) * _half_width(a) ** ((n - 1) / 2)


def first_moment_minus_quadrature(n, a):
    a = fold_cutoff(a)
    return mu_integral(n, lambda x: x, a, "minus", abs_tol=1e-15, rel_tol=1e-14)


def centroids(n, a, allow_empty=False):
    """Left-frame means of the two clusters for cutoff ``a``.

    At ``a = 0`` the limits 0 and 2 are returned. At ``a = 2`` the minus
    cluster is empty: :class:`EmptyClusterError` is raised unless
    ``allow_empty`` is set, in which case ``c_minus`` is None.
    """
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 0.0:
        return CentroidPair(0.0, 2.0)
    if a == 2.0:
        if not allow_empty:
            raise EmptyClusterError("minus cluster is empty at cutoff 2")
        return CentroidPair(None, 1.0)
    m = mass_minus(n, a)
    p = first_moment_minus(n, a)
    return CentroidPair(p / m, (2.0 - p) / (2.0 - m))


def mass_series(n, a, term_tol=SERIES_TERM_TOL, max_terms=SERIES_MAX_TERMS):
    """M_n^-(a) for a in (1, 2) by repeated integration by parts.

    Sums ``2 A_n/(n-1) * sum_k P_k s^((n-3)/2 - k) (2-a)^(2k+1)`` with
    ``s = 2a - a^2`` and ``P_k = prod_{j<=k} (n-2j-1)/(n+2j-1)``.  Odd ``n``
    terminates; even ``n`` becomes alternating once ``n - 2j - 1 < 0`` and is
    truncated there when the next term drops below ``term_tol``.
    """
    n = check_dimension(n, minimum=3)
    a = fold_cutoff(a)
    if a == 2.0:
        return 0.0
    if not 1.0 < a < 2.0:
        raise DomainError(f"series needs a in (1, 2), got {a}")
    s = _half_width(a)
    q = (2.0 - a) ** 2 / s
    term = 2.0 * normalization_constant(n) / (n - 1) * s ** ((n - 3) / 2) * (2.0 - a)
    total = 0.0
    alternating = False
    for k in range(max_terms):
        total += term
        j = k + 1
        factor = (n - 2 * j - 1) / (n + 2 * j - 1)
        if factor < 0:
            alternating = True
        term *= factor * q
        if term == 0.0 or (alternating and abs(term) < term_tol):
            return total
    raise ConvergenceError(f"mass series did not converge in {max_terms} terms (n={n}, a={a})")


def mass_lower_bound_check(n, a):
    """True iff M_n^-(a) >= (A_n/(n-1)) (2a - a^2)^((n-1)/2)."""
    n = check_dimension(n, minimum=3)
    a = fold_cutoff(a)
    if not 1.0 <= a < 2.0:
        raise DomainError(f"lower bound is stated for a in [1, 2), got {a}")
    return mass_minus(n, a) >= -first_moment_minus(n, a)


def mass_dimension_monotonicity_check(a, n_grid):
    """True iff M_n^-(a) increases along ``n_grid`` for a in (0, 1), decreases for a in (1, 2).

    Consecutive differences must exceed a 1e-12 resolution guard.
    """
    a = float(a)
    if a in (0.0, 1.0, 2.0) or not 0.0 < a < 2.0:
        raise DomainError(f"monotonicity in n is only strict for a in (0,1) or (1,2), got {a}")
    grid = [check_dimension(n, minimum=4) for n in n_grid]
    if any(b <= c for c, b in zip(grid, grid[1:])):
        raise DomainError("n_grid must be strictly increasing")
    values = [mass_minus(n, a) for n in grid]
    sign = 1.0 if a < 1.0 else -1.0
    return all(sign * (hi - lo) > MONOTONE_GUARD for lo, hi in zip(values, values[1:]))


def corollary_ordering_check(a, n_grid):
    """True iff M_3^-(a) <= M_n^-(a) <= 1 for every n in ``n_grid`` (a in [0, 1])."""
    a = fold_cutoff(a)
    if a > 1.0:
        raise DomainError(f"ordering is stated for a in [0, 1], got {a}")
    floor = mass_minus(3, a)
    for n in n_grid:
        m = mass_minus(check_dimension(n, minimum=4), a)
        if not floor - MONOTONE_GUARD <= m <= 1.0 + MONOTONE_GUARD:
            return False
    return True

"""Mean-squared error E(n, a) of the hyperplane partition at cutoff ``a``.

The partition puts ``{x_1 <= -a}`` (symmetric frame) in the minus cluster.
Everything is expressed through the projected measure of
:mod:`twospheres.measure`; total mass there is 2, so E is half the sum of the
three component integrals.
"""
from dataclasses import asdict, dataclass
import math

from .errors import DegeneratePartitionError, EndpointError, SingularPrefactorError
from .measure import (
    _half_width,
    centroids,
    check_dimension,
    first_moment_minus,
    fold_cutoff,
    mass_minus,
    mu_integral,
    normalization_constant,
)

N2_REFUSAL = 1e-9


@dataclass(frozen=True)
class MseReport:
    n: int
    a: float
    e_minus: float
    e_pm: float
    e_plus: float
    e_total: float
    derivative: float | None = None
    bracket_factor: float | None = None

    def as_dict(self):
        return asdict(self)


def mse_components(n, a):
    """(E_-, E_pm, E_+) by quadrature against the projected measure.

    E_- covers the left sphere below the cut, E_pm the left sphere above it
    (scored against the plus centroid) and E_+ the whole right sphere.
    """
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 2.0:
        raise DegeneratePartitionError("cutoff 2 leaves a single cluster")
    cp = centroids(n, a)
    c_minus, c_plus = cp.c_minus, cp.c_plus
    e_minus = mu_integral(n, lambda x: 1.0 - x * x + (x - c_minus) ** 2, a, "minus")
    e_pm = mu_integral(n, lambda x: 1.0 - x * x + (x - c_plus) ** 2, a, "plus")
    e_plus = mu_integral(n, lambda x: 1.0 - x * x + (2.0 + x - c_plus) ** 2, a, "full")
    return e_minus, e_pm, e_plus


def mse_total(n, a):
    """E(n, a) from the mass and first moment of the minus piece.

    E = 3 - (p^2/m + (2-p)^2/(2-m)) / 2 with m the mass and p the first
    moment below the cut. At a = 2 the minus cluster is empty and the limit
    value 2 (one cluster around the global mean) is returned.
    """
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 2.0:
        return 2.0
    m = mass_minus(n, a)
    p = first_moment_minus(n, a)
    return 3.0 - 0.5 * (p * p / m + (2.0 - p) ** 2 / (2.0 - m))


def mse_excess(n, a):
    """E(n, a) - 1 without the cancellation against the constant 1.

    Rearranging the mass/moment formula gives
    ``E - 1 = (2 w - b^2 / m) / (2 - m)`` with ``m`` the mass below the cut,
    ``b`` minus its first moment and ``w`` the integral of ``1 - x`` above
    the cut, a positive integrand evaluated by quadrature.  Near a = 0 the
    excess is many orders below 1 and keeps its relative accuracy, which
    finite differences of E need in high dimension.
    """
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 0.0:
        return 0.0
    if a == 2.0:
        return 1.0
    m = mass_minus(n, a)
    b = -first_moment_minus(n, a)
    w = mu_integral(n, None, a, "plus_gap", abs_tol=0.0, rel_tol=1e-14)
    return (2.0 * w - b * b / m) / (2.0 - m)


def mse_deficit(n, a):
    """2 - E(n, a) = (m + b)^2 / (m (2 - m)), free of cancellation near a = 2."""
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 2.0:
        return 0.0
    m = mass_minus(n, a)
    b = -first_moment_minus(n, a)
    return (m + b) ** 2 / (m * (2.0 - m))


def mse_finite_difference(n, a, step=1e-6):
    """Central difference of E at ``a``, independent of the closed-form derivative.

    E itself sits near 1 or 2, where rounding alone puts ~1e-10 of noise
    into a difference quotient with step 1e-6.  The quotient is therefore
    taken on the excess E - 1 when ``a <= 1`` and on the deficit 2 - E
    otherwise; both sides of the stencil use the same representation.
    """
    a = fold_cutoff(a)
    if not step < a < 2.0 - step:
        raise EndpointError(f"stencil around {a} leaves (0, 2)")
    if a <= 1.0:
        return (mse_excess(n, a + step) - mse_excess(n, a - step)) / (2.0 * step)
    return (mse_deficit(n, a - step) - mse_deficit(n, a + step)) / (2.0 * step)


def mse_closed_form_n2(a):
    """E(2, a) in elementary functions: M = 1 - arccos(1-a)/pi, p = -sqrt(2a - a^2)/pi."""
    a = fold_cutoff(a)
    if a == 2.0:
        return 2.0
    # arccos(1 - a) = 2 arcsin(sqrt(a/2)), which stays accurate for tiny a
    m = 1.0 - 2.0 * math.asin(math.sqrt(a / 2.0)) / math.pi
    p = -math.sqrt(_half_width(a)) / math.pi
    return 3.0 - 0.5 * (p * p / m + (2.0 - p) ** 2 / (2.0 - m))


def derivative_prefactor(n, a):
    """2 A_n (2a - a^2)^((n-3)/2) / (M^- M^+)^2."""
    n = check_dimension(n)
    a = fold_cutoff(a)
    m = mass_minus(n, a)
    return 2.0 * normalization_constant(n) * _half_width(a) ** ((n - 3) / 2) / (m * (2.0 - m)) ** 2


def bracket_factor(n, a):
    """Polynomial in M^- whose sign is the sign of dE/da.

    Written with b = (A_n/(n-1)) (2a - a^2)^((n-1)/2), i.e. minus the first
    moment below the cut.
    """
    n = check_dimension(n)
    a = fold_cutoff(a)
    m = mass_minus(n, a)
    b = -first_moment_minus(n, a)
    return (
        (1.0 - a) * m**3
        + (2.0 * a - 1.0) * m**2
        + b * (2.0 - a) * m**2
        + b * b * m
        + 2.0 * b * (a - 1.0) * m
        - b * b
    )


def mse_derivative(n, a):
    """dE/da in closed form.

    At a = 0 the value is 0 for n >= 3. For n = 2 the prefactor diverges at
    the tangency point and cutoffs below 1e-9 are refused. At a = 2 the
    minus cluster is empty and the derivative is not defined.
    """
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 2.0:
        raise EndpointError("derivative undefined at cutoff 2 (empty cluster)")
    if n == 2 and a <= N2_REFUSAL:
        raise SingularPrefactorError(f"prefactor diverges for n = 2 at a = {a}")
    if a == 0.0:
        return 0.0
    return derivative_prefactor(n, a) * bracket_factor(n, a)


def mse_report(n, a):
    n = check_dimension(n)
    a = fold_cutoff(a)
    if a == 2.0:
        return MseReport(n, a, 0.0, 2.0, 2.0, 2.0)
    e_minus, e_pm, e_plus = mse_components(n, a)
    try:
        deriv = mse_derivative(n, a)
    except EndpointError:
        deriv = None
    bracket = bracket_factor(n, a) if 0.0 < a < 2.0 else None
    return MseReport(n, a, e_minus, e_pm, e_plus, 0.5 * (e_minus + e_pm + e_plus), deriv, bracket)

import math

import pytest

from twospheres.errors import DomainError
from twospheres.mse import mse_closed_form_n2, mse_total
from twospheres.optimize import (
    certify_monotonicity,
    cutoff_grid,
    golden_section,
    minimize_cutoff,
    monotonicity_failures,
)

WITNESS = (45 * math.pi**2 - 30 * math.pi - 9) / (35 * math.pi**2)
# root of dE/da for n = 2 from mpmath.findroot on the 40-digit closed form
N2_ARGMIN = 0.22455056527832654


def test_golden_section_on_a_parabola():
    lo, hi = golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 1e-9)
    assert hi - lo <= 1e-9
    assert lo - 1e-9 <= 0.3 <= hi + 1e-9


def test_golden_section_boundary_minimum_keeps_left_end():
    lo, hi = golden_section(lambda x: x, 0.0, 1.0, 1e-6)
    assert lo == 0.0 and hi <= 1e-6


def test_cutoff_grid():
    g = cutoff_grid(0.05)
    assert len(g) == 40 and g[0] == 0.0 and g[-1] == pytest.approx(1.95)
    assert len(cutoff_grid(0.01)) == 200


@pytest.mark.parametrize("n", [3, 4, 5, 8])
@pytest.mark.parametrize("method", ["golden_section", "grid_refine", "derivative_bisection"])
def test_boundary_minimum_snaps_to_zero(n, method):
    if method == "derivative_bisection" and n < 4:
        pytest.skip("bisection on dE/da is only offered for n >= 4")
    res = minimize_cutoff(n, 1e-8, method=method)
    assert res.a_star == 0.0
    assert res.e_star == pytest.approx(1.0, abs=1e-12)
    assert res.bracket[1] - res.bracket[0] <= 1e-8
    assert res.method == method and res.evaluations > 0


@pytest.mark.parametrize("tol", [1e-2, 1e-4, 1e-8, 1e-12])
def test_n2_interior_minimum(tol):
    res = minimize_cutoff(2, tol)
    assert abs(res.a_star - N2_ARGMIN) <= tol
    assert res.bracket[1] - res.bracket[0] <= tol
    assert res.e_star == mse_total(2, res.a_star)
    assert res.e_star <= WITNESS < 1.0


def test_n2_matches_elementary_closed_form_minimum():
    res = minimize_cutoff(2, 1e-10)
    assert mse_closed_form_n2(res.a_star) == pytest.approx(0.98476813564801966, abs=1e-14)


def test_grid_refine_n2():
    res = minimize_cutoff(2, 1e-6, method="grid_refine")
    assert abs(res.a_star - N2_ARGMIN) <= 1e-6


def test_invariant_under_halved_grid_step():
    for n in (2, 3, 6):
        a = minimize_cutoff(n, 1e-8).a_star
        b = minimize_cutoff(n, 1e-8, grid_step=0.005).a_star
        assert abs(a - b) <= 1e-8


def test_no_cutoff_beats_zero_above_two_dimensions():
    for n in (3, 4, 7):
        assert all(mse_total(n, a) >= 1.0 - 1e-12 for a in cutoff_grid(0.01))


def test_validation():
    with pytest.raises(DomainError):
        minimize_cutoff(3, 1e-1)
    with pytest.raises(DomainError):
        minimize_cutoff(3, 1e-8, method="derivative_bisection")
    with pytest.raises(DomainError):
        minimize_cutoff(3, 1e-8, method="newton")


@pytest.mark.parametrize("n", [3, 4, 12])
def test_certify(n):
    assert certify_monotonicity(n, 0.01)


def test_certify_domain():
    with pytest.raises(DomainError):
        certify_monotonicity(4, 0.5)
    with pytest.raises(DomainError):
        certify_monotonicity(2, 0.01)


def test_failures_reported(monkeypatch):
    import twospheres.optimize as opt

    monkeypatch.setattr(opt, "mse_derivative", lambda n, a: -1.0 if abs(a - 0.5) < 1e-9 else 1.0)
    assert opt.monotonicity_failures(5, 0.05) == [pytest.approx(0.5)]
    assert not opt.certify_monotonicity(5, 0.05)

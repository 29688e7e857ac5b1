import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest
from scipy.special import betainc

from twospheres.errors import ConvergenceError, DomainError, EmptyClusterError
from twospheres.measure import (
    GeometryParams,
    centroids,
    corollary_ordering_check,
    first_moment_minus,
    first_moment_minus_quadrature,
    fold_cutoff,
    mass_dimension_monotonicity_check,
    mass_lower_bound_check,
    mass_minus,
    mass_minus_quadrature,
    mass_series,
    masses,
    normalization_constant,
)

A_N2 = 1 - math.sqrt(3) / 2  # the n = 2 witness cutoff
dims = st.integers(min_value=2, max_value=16)
cutoffs = st.floats(min_value=0.0, max_value=2.0)


def beta_mass(n, a):
    """Independent oracle: the projected mass is a regularized incomplete beta."""
    alpha = (n - 1) / 2
    # evaluate on the side away from x = 1, where betainc loses digits for small shapes
    if a < 1:
        return 1.0 - betainc(alpha, alpha, a / 2.0)
    return betainc(alpha, alpha, (2.0 - a) / 2.0)


class TestNormalization:
    @pytest.mark.parametrize("n,expected", [(3, 0.5), (2, 1 / math.pi), (4, 2 / math.pi)])
    def test_values(self, n, expected):
        assert normalization_constant(n) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("n", range(2, 40))
    def test_against_gamma(self, n):
        expected = math.gamma(n / 2) / (math.sqrt(math.pi) * math.gamma((n - 1) / 2))
        assert normalization_constant(n) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("n", [1, 0, -3, 2.5, True])
    def test_rejects(self, n):
        with pytest.raises(DomainError):
            normalization_constant(n)

    def test_large_dimension_stays_finite(self):
        # Gamma itself overflows here; the ratio recursion does not
        assert math.isfinite(normalization_constant(500))


class TestFrames:
    def test_geometry_frame_shift(self):
        g = GeometryParams(3)
        assert g.to_rho_frame(2.0) == 1.0
        assert g.to_left_frame(-1.0) == 0.0
        with pytest.raises(DomainError):
            GeometryParams(1)

    @pytest.mark.parametrize("a,folded", [(-0.3, 0.3), (1.2, 1.2), (-2.0, 2.0), (0.0, 0.0)])
    def test_fold(self, a, folded):
        assert fold_cutoff(a) == folded

    @pytest.mark.parametrize("a", [2.5, -2.0001, float("nan")])
    def test_fold_rejects(self, a):
        with pytest.raises(DomainError):
            fold_cutoff(a)

    def test_negative_cutoff_uses_reflection(self):
        assert mass_minus(5, -0.7) == mass_minus(5, 0.7)


class TestMassMinus:
    def test_examples(self):
        assert mass_minus(3, 0.5) == 0.75
        for n in range(2, 17):
            assert mass_minus(n, 1.0) == pytest.approx(0.5, abs=1e-12)
        assert mass_minus(2, A_N2) == pytest.approx(5 / 6, abs=1e-12)

    @pytest.mark.parametrize("n", range(2, 17))
    def test_normalization_of_quadrature(self, n):
        assert mass_minus_quadrature(n, 0.0) == pytest.approx(1.0, abs=1e-12)
        assert mass_minus_quadrature(n, 1.0) == pytest.approx(0.5, abs=1e-12)

    @given(dims, cutoffs)
    def test_matches_incomplete_beta(self, n, a):
        assert mass_minus(n, a) == pytest.approx(beta_mass(n, a), abs=1e-12)

    @given(dims, cutoffs)
    def test_complement(self, n, a):
        b = 2.0 - a
        a = 2.0 - b  # exact pair: a + b == 2 with no rounding
        assert mass_minus(n, a) + mass_minus(n, b) == pytest.approx(1.0, abs=1e-12)

    # acos(1 - a) amplifies the rounding of 1 - a below a ~ 1e-8
    @given(st.just(0.0) | st.floats(min_value=1e-8, max_value=2.0))
    def test_closed_forms_for_n2_and_n3(self, a):
        assert mass_minus_quadrature(2, a) == pytest.approx(1 - math.acos(1 - a) / math.pi, abs=1e-11)
        assert mass_minus_quadrature(3, a) == pytest.approx((2 - a) / 2, abs=1e-11)

    @given(dims, cutoffs, cutoffs)
    def test_non_increasing(self, n, a, b):
        lo, hi = sorted((a, b))
        assert mass_minus(n, hi) <= mass_minus(n, lo) + 1e-15

    def test_relative_accuracy_near_two(self):
        # the beta oracle loses nothing in relative terms for tiny masses
        for n in (6, 12):
            assert mass_minus(n, 1.995) == pytest.approx(beta_mass(n, 1.995), rel=1e-11)

    def test_mass_pair(self):
        pair = masses(4, 0.4)
        assert pair.m_minus + pair.m_plus == 2.0
        assert 0 <= pair.m_minus <= 1 <= pair.m_plus <= 2


class TestFirstMoment:
    def test_examples(self):
        for n in (2, 3, 7):
            assert first_moment_minus(n, 0.0) == 0.0
        assert first_moment_minus(3, 1.0) == pytest.approx(-0.25, abs=1e-15)
        assert first_moment_minus(2, A_N2) == pytest.approx(-1 / (2 * math.pi), abs=1e-15)

    @given(dims, cutoffs)
    def test_quadrature_path_agrees(self, n, a):
        assert first_moment_minus_quadrature(n, a) == pytest.approx(first_moment_minus(n, a), abs=1e-11)


class TestCentroids:
    def test_n2_witness(self):
        cp = centroids(2, A_N2)
        assert cp.c_minus == pytest.approx(-3 / (5 * math.pi), abs=1e-12)
        assert cp.c_plus == pytest.approx(12 / 7 + 3 / (7 * math.pi), abs=1e-12)
        assert cp.rho_minus == pytest.approx(-1 - 3 / (5 * math.pi), abs=1e-12)
        assert cp.rho_plus == pytest.approx(5 / 7 + 3 / (7 * math.pi), abs=1e-12)

    @pytest.mark.parametrize("a", [0.2, 1.0])
    def test_n3(self, a):
        cp = centroids(3, a)
        assert cp.rho_minus == pytest.approx(-1 - a / 2, abs=1e-14)
        assert cp.rho_plus == pytest.approx(1 - a / 2, abs=1e-14)

    def test_endpoints(self):
        cp = centroids(5, 0.0)
        assert (cp.c_minus, cp.c_plus) == (0.0, 2.0)
        with pytest.raises(EmptyClusterError):
            centroids(5, 2.0)
        empty = centroids(5, 2.0, allow_empty=True)
        assert empty.minus_empty and empty.c_plus == 1.0 and empty.rho_minus is None

    @given(dims, st.floats(min_value=1e-6, max_value=2.0 - 1e-6))
    def test_hull_and_first_moment_balance(self, n, a):
        cp = centroids(n, a)
        pair = masses(n, a)
        assert -1.0 <= cp.c_minus <= 1.0 - a + 1e-12
        assert 1.0 - a < cp.c_plus < 3.0
        assert cp.c_minus * pair.m_minus + cp.c_plus * pair.m_plus == pytest.approx(2.0, abs=1e-10)


class TestSeries:
    def test_examples(self):
        assert mass_series(3, 1.5) == pytest.approx(0.25, abs=1e-15)
        assert mass_series(5, 2.0) == 0.0
        assert mass_series(4, 1.9999) < 1e-6
        assert mass_series(5, 1.25) == pytest.approx(mass_minus(5, 1.25), abs=1e-8)
        # mpmath quadrature at 40 digits
        assert mass_series(5, 1.25) == pytest.approx(0.31640625, abs=1e-14)

    @pytest.mark.parametrize("n", range(3, 17))
    @pytest.mark.parametrize("a", [1.05, 1.3, 1.5, 1.75, 1.95, 1.999])
    def test_agrees_with_quadrature(self, n, a):
        assert mass_series(n, a) == pytest.approx(mass_minus(n, a), abs=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            mass_series(4, 0.5)
        with pytest.raises(DomainError):
            mass_series(2, 1.5)

    def test_term_budget(self):
        with pytest.raises(ConvergenceError):
            mass_series(4, 1.01, max_terms=5)


class TestBounds:
    def test_lower_bound_examples(self):
        assert mass_lower_bound_check(3, 1.0)
        assert mass_lower_bound_check(4, 1.5)
        assert mass_lower_bound_check(8, 1.9)
        with pytest.raises(DomainError):
            mass_lower_bound_check(4, 0.5)

    def test_lower_bound_values(self):
        # both sides from a 40-digit mpmath evaluation
        assert mass_minus(4, 1.5) == pytest.approx(0.19550110947788532, abs=1e-14)
        assert mass_minus(8, 1.9) == pytest.approx(4.7153116117016503e-4, rel=1e-12)
        assert -first_moment_minus(4, 1.5) == pytest.approx(0.13783222385544801, abs=1e-14)

    def test_dimension_monotonicity_examples(self):
        assert mass_dimension_monotonicity_check(0.5, [4, 5, 6, 8, 12])
        assert mass_dimension_monotonicity_check(1.5, [4, 5, 6, 8, 12])
        assert mass_dimension_monotonicity_check(0.5, [4])

    @pytest.mark.parametrize("a", [0.0, 1.0, 2.0, -0.5, 2.5])
    def test_dimension_monotonicity_rejects_flat_points(self, a):
        with pytest.raises(DomainError):
            mass_dimension_monotonicity_check(a, [4, 5])

    def test_dimension_monotonicity_rejects_bad_grid(self):
        with pytest.raises(DomainError):
            mass_dimension_monotonicity_check(0.5, [5, 4])
        with pytest.raises(DomainError):
            mass_dimension_monotonicity_check(0.5, [3, 4])

    def test_monotone_check_detects_wrong_direction(self, monkeypatch):
        import twospheres.measure as measure

        monkeypatch.setattr(measure, "mass_minus", lambda n, a: 1.0 / n)
        assert not measure.mass_dimension_monotonicity_check(0.5, [4, 5])
        assert measure.mass_dimension_monotonicity_check(1.5, [4, 5])
        monkeypatch.setattr(measure, "mass_minus", lambda n, a: 0.3)
        assert not measure.mass_dimension_monotonicity_check(1.5, [4, 5])

    @pytest.mark.parametrize("a", np.linspace(0.0, 1.0, 11))
    def test_corollary_ordering(self, a):
        assert corollary_ordering_check(a, range(4, 17))

    def test_corollary_domain(self):
        with pytest.raises(DomainError):
            corollary_ordering_check(1.5, [4])


@settings(max_examples=30)
@given(st.floats(min_value=0.01, max_value=1.99).filter(lambda a: abs(a - 1) > 0.01))
def test_mass_moves_with_dimension_like_the_beta_oracle(a):
    sign = 1 if a < 1 else -1
    values = [beta_mass(n, a) for n in (4, 6, 9)]
    assert sign * (values[1] - values[0]) > 0 and sign * (values[2] - values[1]) > 0
    assert mass_dimension_monotonicity_check(a, [4, 6, 9])

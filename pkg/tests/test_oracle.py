"""
Radial Oracle Tests
===================
Tests for the radial systems, their power-series solutions and the independent
eigenvalue evaluations.
"""

import math

import numpy as np
import pytest

from magsteklov.core.oracle import (
    _combine_at_boundary,
    b2_closed_form_profile,
    b4_coexact_closed_form_profile,
    disk_system,
    ode_residual,
    reconcile_b4_exact,
    series_solve,
    steklov_eigenvalue_ivp,
    steklov_eigenvalue_oracle,
    w_branch_closed_form,
)
from magsteklov.core.radial import RadialProfile, RadialSystemSpec
from magsteklov.core.spectra import b2_steklov_eigenvalue, b4_steklov_coexact, b4_steklov_exact
from magsteklov.errors import DegeneracyError, InvalidArgumentError, TruncationError
from magsteklov.schemas.spectrum import Family

SAMPLE_R = [0.25, 0.5, 0.75, 1.0]


class TestRadialSystemSpec:
    """Tests for radial system validation."""

    def test_exact_family_has_no_conjugate(self):
        """The B4 exact system has a single orientation."""
        with pytest.raises(InvalidArgumentError):
            RadialSystemSpec("B4Exact", 1, 1.0, conjugate=True)

    def test_rejects_p_above_k(self):
        """B4 systems need 0 <= p <= k."""
        with pytest.raises(InvalidArgumentError):
            RadialSystemSpec("B4Coexact", 1, 1.0, p=2)

    def test_rejects_negative_t(self):
        """t must be non-negative."""
        with pytest.raises(InvalidArgumentError):
            RadialSystemSpec("B2", 1, -0.5)

    def test_disk_system_mapping(self):
        """The Plus family is the conjugate disk system."""
        assert disk_system(1, Family.B2_PLUS, 1.0).conjugate is True
        assert disk_system(1, Family.B2_MINUS, 1.0).conjugate is False
        assert disk_system(0, Family.B2_K_ZERO, 1.0).k == 0


class TestSeriesSolve:
    """Tests for the regular power-series branches."""

    def test_branches_for_coupled_systems(self):
        """Coupled systems return two branches, scalar systems one."""
        z, w = series_solve(RadialSystemSpec("B2", 2, 1.0))
        assert w is not None
        assert z.coeffs_Q[0] == pytest.approx(1.0)
        assert w.coeffs_Q[0] == 0.0
        _z, none = series_solve(RadialSystemSpec("B4Coexact", 1, 1.0))
        assert none is None

    def test_requires_enough_terms(self):
        """Fewer than 20 terms are refused."""
        with pytest.raises(InvalidArgumentError):
            series_solve(RadialSystemSpec("B2", 1, 1.0), n_terms=10)

    @pytest.mark.parametrize(
        "spec",
        [
            RadialSystemSpec("B2", 0, 2.0),
            RadialSystemSpec("B2", 3, 2.0),
            RadialSystemSpec("B2", 3, 2.0, conjugate=True),
            RadialSystemSpec("B4Exact", 2, 2.0, p=1),
            RadialSystemSpec("B4Coexact", 2, 2.0, p=0, conjugate=True),
        ],
    )
    def test_branches_solve_the_system(self, spec: RadialSystemSpec):
        """Scaled residuals of every branch stay at rounding level."""
        for branch in series_solve(spec):
            if branch is not None:
                assert ode_residual(branch, spec, SAMPLE_R) < 1e-10

    def test_truncation_detected(self):
        """A profile whose tail is still large at r = 1 is rejected."""
        profile = RadialProfile(0, 1, np.ones(30), np.ones(30))
        with pytest.raises(TruncationError):
            profile.check_converged()

    def test_residual_rejects_bad_radius(self):
        """Sample radii must lie in (0, 1]."""
        spec = RadialSystemSpec("B2", 1, 1.0)
        z, _w = series_solve(spec)
        with pytest.raises(InvalidArgumentError):
            ode_residual(z, spec, [0.0])


class TestOracle:
    """Tests for the series-based Steklov eigenvalue."""

    def test_disk_references(self):
        """e, 1/(e - 2) and coth(1/2) at t = 1."""
        assert steklov_eigenvalue_oracle(disk_system(1, Family.B2_MINUS, 1.0)) == pytest.approx(
            math.e, rel=1e-10
        )
        assert steklov_eigenvalue_oracle(disk_system(1, Family.B2_PLUS, 1.0)) == pytest.approx(
            1 / (math.e - 2), rel=1e-10
        )
        assert steklov_eigenvalue_oracle(disk_system(0, Family.B2_K_ZERO, 1.0)) == pytest.approx(
            1 / math.tanh(0.5), rel=1e-10
        )

    @pytest.mark.parametrize("k", [1, 2, 4, 8])
    @pytest.mark.parametrize("t", [0.1, 1.0, 5.0])
    @pytest.mark.parametrize("family", [Family.B2_PLUS, Family.B2_MINUS])
    def test_disk_agrees_with_closed_form(self, k: int, t: float, family: Family):
        """The oracle reproduces the closed-form disk spectrum."""
        expected = b2_steklov_eigenvalue(k, family, t)
        assert steklov_eigenvalue_oracle(disk_system(k, family, t)) == pytest.approx(
            expected, rel=1e-8
        )

    def test_no_field_limits(self):
        """At t = 0 the oracle gives k + 1 on B2 and k(k+2)/(k+1) on B4."""
        assert steklov_eigenvalue_oracle(RadialSystemSpec("B2", 1, 0.0)) == pytest.approx(2.0)
        assert steklov_eigenvalue_oracle(RadialSystemSpec("B4Exact", 1, 0.0)) == pytest.approx(
            1.5
        )
        assert steklov_eigenvalue_oracle(RadialSystemSpec("B4Coexact", 2, 0.0, p=1)) == (
            pytest.approx(3.0)
        )

    @pytest.mark.parametrize("sign", [1, -1])
    def test_coexact_agrees_with_closed_form(self, sign: int):
        """Co-exact B4 closed forms match the radial system."""
        spec = RadialSystemSpec("B4Coexact", 1, 1.0, p=0, conjugate=sign == -1)
        assert steklov_eigenvalue_oracle(spec) == pytest.approx(
            b4_steklov_coexact(1, 0, sign, 1.0), rel=1e-6
        )

    def test_degenerate_boundary(self):
        """Both branches vanishing at r = 1 is reported."""
        with pytest.raises(DegeneracyError):
            _combine_at_boundary(0.0, 1.0, 0.0, 2.0)

    def test_combination_is_unit_length(self):
        """Boundary weights are normalized."""
        alpha, beta = _combine_at_boundary(3.0, 1.0, 4.0, 1.0)
        assert math.hypot(alpha, beta) == pytest.approx(1.0)
        assert alpha * 3.0 + beta * 4.0 == pytest.approx(0.0, abs=1e-15)


class TestClosedForms:
    """Tests for the high-precision closed-form profiles."""

    @pytest.mark.parametrize("k", [0, 1, 3])
    @pytest.mark.parametrize("conjugate", [False, True])
    def test_disk_profile_solves_system(self, k: int, conjugate: bool):
        """The closed-form disk solution satisfies the radial equations."""
        if k == 0 and conjugate:
            pytest.skip("k = 0 has a single orientation")
        spec = RadialSystemSpec("B2", k, 2.0, conjugate=conjugate)
        profile = b2_closed_form_profile(k, 2.0, conjugate)
        assert ode_residual(profile, spec, SAMPLE_R) < 1e-8

    def test_disk_profile_normalization(self):
        """P(1) = 0 and Q(1) = 1."""
        values = b2_closed_form_profile(2, 1.5).derivatives(1.0)
        assert values.P == pytest.approx(0.0, abs=1e-12)
        assert values.Q == pytest.approx(1.0)

    def test_disk_profile_eigenvalue(self):
        """Q'(1) of the closed-form Plus profile is 1 / (e - 2) at k = t = 1."""
        values = b2_closed_form_profile(1, 1.0, conjugate=True).derivatives(1.0)
        assert values.dQ == pytest.approx(1 / (math.e - 2), rel=1e-9)

    def test_coexact_profile_solves_system(self):
        """The closed-form co-exact profile satisfies its scalar equation."""
        spec = RadialSystemSpec("B4Coexact", 2, 1.0, p=1)
        profile = b4_coexact_closed_form_profile(2, 1, 1, 1.0)
        assert ode_residual(profile, spec, SAMPLE_R) < 1e-8

    def test_coexact_profile_requires_field(self):
        """The Laguerre form needs t > 0."""
        with pytest.raises(InvalidArgumentError):
            b4_coexact_closed_form_profile(1, 0, 1, 0.0)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_w_branch_shape(self, k: int):
        """The series W branch is a constant multiple of the printed one."""
        t = 2.0
        _z, w = series_solve(RadialSystemSpec("B2", k, t))
        assert w is not None
        ratios = np.array([w.hat_P(r) / w_branch_closed_form(k, t, r) for r in SAMPLE_R])
        assert np.ptp(ratios) / abs(np.mean(ratios)) < 1e-9


class TestCrossChecks:
    """Tests for the integrator cross-check and the exact-family reconciliation."""

    @pytest.mark.parametrize(
        "spec",
        [
            RadialSystemSpec("B2", 1, 1.0, conjugate=True),
            RadialSystemSpec("B4Exact", 1, 1.0),
            RadialSystemSpec("B4Coexact", 2, 0.5, p=1, conjugate=True),
        ],
    )
    def test_ivp_matches_series(self, spec: RadialSystemSpec):
        """Explicit integration agrees with the series oracle."""
        assert steklov_eigenvalue_ivp(spec) == pytest.approx(
            steklov_eigenvalue_oracle(spec), rel=1e-7
        )

    def test_reconcile_reports_both_variants(self):
        """The default printed variant agrees with the radial oracle."""
        report = reconcile_b4_exact(1, 0, 1.0)
        assert report.oracle_value == pytest.approx(b4_steklov_exact(1, 0, 1.0), rel=1e-6)
        assert "ProofQPrime" in report.matching_variants
        assert report.tolerance == 1e-6

"""
Verification Suite Tests
========================
Tests for configuration loading, check selection and result reporting.
"""

from pathlib import Path
from typing import Any

import pytest

from magsteklov.core.radial import RadialSystemSpec
from magsteklov.errors import DegeneracyError, InvalidArgumentError, NormalizationError
from magsteklov.jobs import verify
from magsteklov.jobs.verify import VerificationSuite

CHECKS = [
    "zero-modes",
    "b2-oracle",
    "b4-coexact-oracle",
    "series-residual",
    "closed-form-residual",
    "w-branch-ratio",
    "ivp-crosscheck",
    "galerkin",
    "reconcile-b4-exact",
    "harmonic-extension",
    "diamagnetic",
]


class TestVerificationSuite:
    """Tests for the verification suite."""

    @pytest.fixture
    def suite(self, verify_config: Path) -> VerificationSuite:
        """Suite with reduced grids."""
        return VerificationSuite(config_path=str(verify_config))

    def test_check_names(self, suite: VerificationSuite):
        """Every named check is registered in order."""
        assert suite.check_names == CHECKS

    def test_missing_config_uses_defaults(self, tmp_path: Path):
        """A missing YAML file falls back to the built-in grids."""
        suite = VerificationSuite(config_path=str(tmp_path / "missing.yaml"))
        report = suite.run(only="zero-modes")
        assert report.checks[0].details == {"k_max": 10}

    def test_config_grid_is_used(self, suite: VerificationSuite):
        """Grids come from the YAML file."""
        report = suite.run(only="zero-modes")
        assert report.passed
        assert report.checks[0].details == {"k_max": 2}

    def test_sections_missing_from_yaml_use_defaults(self, suite: VerificationSuite):
        """Checks without a YAML section run on the built-in grid."""
        report = suite.run(only="w-branch-ratio")
        assert report.checks[0].status == "pass"

    def test_disk_oracle(self, suite: VerificationSuite):
        """The disk closed forms agree with the series oracle."""
        report = suite.run(only="b2-oracle")
        assert report.passed
        assert report.checks[0].details == {"cases": 3}
        assert report.checks[0].max_error is not None
        assert report.checks[0].max_error <= 1e-8

    def test_tolerance_override(self, suite: VerificationSuite):
        """A global tolerance replaces the configured ones."""
        report = suite.run(only="zero-modes", tolerance=0.5)
        assert report.checks[0].tolerance == 0.5

    def test_harmonic_extension_single_ball(self, suite: VerificationSuite):
        """--n restricts the audit to one ball."""
        report = suite.run(only="harmonic-extension", n=1)
        assert report.passed
        assert report.checks[0].details == {"n": [1]}

    def test_unknown_check(self, suite: VerificationSuite):
        """Unknown names are rejected before any check runs."""
        with pytest.raises(InvalidArgumentError):
            suite.run(only="nonexistent")

    def test_library_error_becomes_error_status(
        self, suite: VerificationSuite, monkeypatch: pytest.MonkeyPatch
    ):
        """A raising check is reported rather than aborting the run."""

        def broken(params: dict[str, Any], tol: float) -> Any:
            raise NormalizationError("Q(1) vanishes")

        monkeypatch.setitem(suite._checks, "zero-modes", broken)
        report = suite.run(only="zero-modes")
        check = report.checks[0]
        assert check.status == "error"
        assert check.max_error is None
        assert "Q(1) vanishes" in check.details["error"]
        assert not report.passed

    def test_uncompared_cases_fail_the_check(
        self, suite: VerificationSuite, monkeypatch: pytest.MonkeyPatch
    ):
        """A grid on which the oracle never answers cannot pass."""

        def degenerate(spec: RadialSystemSpec, n_terms: int | None = None) -> float:
            raise DegeneracyError("both branches vanish at r = 1")

        monkeypatch.setattr(verify, "steklov_eigenvalue_oracle", degenerate)
        check = suite.run(only="b4-coexact-oracle").checks[0]
        assert check.status == "fail"
        assert check.max_error == 0.0
        assert len(check.details["skipped"]) == 2 * 3 * (2 + 3 + 4 + 5 + 6)

    def test_tolerance_override_keeps_crossing_tolerance(
        self, suite: VerificationSuite, monkeypatch: pytest.MonkeyPatch
    ):
        """The crossing tolerance is in units of t and ignores the global override."""
        received: list[float] = []

        def record(params: dict[str, Any], tol: float) -> Any:
            received.append(tol)
            return True, 0.0, {}

        monkeypatch.setitem(suite._checks, "diamagnetic", record)
        monkeypatch.setitem(suite._checks, "galerkin", record)
        report = suite.run(only="diamagnetic", tolerance=1e-8)
        suite.run(only="galerkin", tolerance=1e-8)
        assert received == [0.05, 1e-8]
        assert report.checks[0].tolerance == 0.05

    def test_document_shape(self, suite: VerificationSuite):
        """The JSON document lists checks and the overall verdict."""
        document = suite.run(only="zero-modes").to_document()
        assert set(document) == {"checks", "pass"}
        assert document["checks"][0]["name"] == "zero-modes"

    @pytest.mark.slow
    def test_full_suite(self):
        """Every check passes on the shipped configuration."""
        root = Path(__file__).resolve().parent.parent
        report = VerificationSuite(config_path=str(root / "config" / "verify.yaml")).run()
        failing = [c.name for c in report.checks if c.status != "pass"]
        assert failing == []

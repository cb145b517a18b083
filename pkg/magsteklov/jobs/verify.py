"""
Verification Suite
==================
Cross-checks of the closed-form spectra against the radial oracle, the
Galerkin min-max solver, the harmonic-extension audit and the diamagnetic
comparison. Grids and tolerances come from a YAML file.
"""

from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import structlog
import yaml

from magsteklov.config import settings
from magsteklov.core.diamagnetic import check_violation, locate_b4_crossing
from magsteklov.core.extension import random_interior_points, verify_harmonic_extension_b2n
from magsteklov.core.galerkin import GalerkinConfig, rayleigh_galerkin_b2
from magsteklov.core.oracle import (
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
from magsteklov.core.radial import RadialSystemSpec
from magsteklov.core.spectra import (
    b2_steklov_eigenvalue,
    b4_steklov_coexact,
    s1_hodge_spectrum,
    s3_coexact_eigenvalue,
)
from magsteklov.errors import InvalidArgumentError, MagSteklovError
from magsteklov.schemas.reports import CheckResult, VerificationReport
from magsteklov.schemas.spectrum import Family

logger = structlog.get_logger()

CheckOutcome = tuple[bool, float, dict[str, Any]]


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _disk_family(k: int, conjugate: bool) -> Family:
    if k == 0:
        return Family.B2_K_ZERO
    return Family.B2_PLUS if conjugate else Family.B2_MINUS


def _grid(spec: list[float]) -> list[float]:
    start, stop, count = spec
    return np.linspace(start, stop, int(count)).tolist()


# Tolerances measured in t rather than relative error; a global override skips them.
ABSOLUTE_T_CHECKS = frozenset({"diamagnetic"})


class VerificationSuite:
    """
    Named verification checks driven by a YAML configuration.

    Loads grids and tolerances from ``config/verify.yaml`` and falls back to
    built-in defaults when the file is missing or unreadable.
    """

    def __init__(self, config_path: str | None = None):
        self.config_path = config_path or settings.verify_config_path
        self._config: dict[str, Any] = {}
        self._load_config()
        self._checks: dict[str, Callable[[dict[str, Any], float], CheckOutcome]] = {
            "zero-modes": self._zero_modes,
            "b2-oracle": self._b2_oracle,
            "b4-coexact-oracle": self._b4_coexact_oracle,
            "series-residual": self._series_residual,
            "closed-form-residual": self._closed_form_residual,
            "w-branch-ratio": self._w_branch_ratio,
            "ivp-crosscheck": self._ivp_crosscheck,
            "galerkin": self._galerkin,
            "reconcile-b4-exact": self._reconcile,
            "harmonic-extension": self._harmonic_extension,
            "diamagnetic": self._diamagnetic,
        }

    def _load_config(self) -> None:
        """Load the suite configuration from YAML."""
        config_file = Path(self.config_path)

        if not config_file.exists():
            logger.warning("Verify config not found, using defaults", path=self.config_path)
            self._config = self._get_default_config()
            return

        try:
            with open(config_file) as f:
                self._config = yaml.safe_load(f) or {}
            logger.info("Loaded verify configuration", path=self.config_path)
        except Exception as e:
            logger.error("Failed to load verify config", error=str(e))
            self._config = self._get_default_config()

    def _get_default_config(self) -> dict[str, Any]:
        """Built-in grids used when the YAML file is unavailable."""
        r = [0.25, 0.5, 0.75, 1.0]
        return {
            "zero-modes": {"tolerance": 1e-12, "k_max": 10},
            "b2-oracle": {
                "tolerance": 1e-8,
                "k": list(range(11)),
                "t": [0.1, 0.5, 1.0, 2.0, 5.0],
            },
            "b4-coexact-oracle": {"tolerance": 1e-6, "k_max": 5, "t": [0.25, 1.0, 2.0]},
            "series-residual": {"tolerance": 1e-10, "r": r, "k_max": 4, "t": [0.5, 2.0]},
            "closed-form-residual": {"tolerance": 1e-8, "r": r, "k_max": 6, "t": [0.5, 2.0, 5.0]},
            "w-branch-ratio": {"tolerance": 1e-9, "r": r, "k": [1, 2, 3], "t": [0.5, 2.0]},
            "ivp-crosscheck": {
                "tolerance": 1e-7,
                "cases": [
                    {"domain": "B2", "k": 1, "t": 1.0, "conjugate": True},
                    {"domain": "B4Exact", "k": 1, "p": 0, "t": 1.0},
                ],
            },
            "galerkin": {
                "tolerance": 1e-6,
                "slack": 1e-9,
                "basis_sizes": [8, 16, 24, 32, 40],
                "cases": [
                    {"k": 1, "t": 0.0, "conjugate": False},
                    {"k": 1, "t": 1.0, "conjugate": True},
                ],
            },
            "reconcile-b4-exact": {
                "tolerance": 1e-6,
                "points": [[1, 0, 1e-4], [1, 0, 1.0], [2, 2, 0.5]],
            },
            "harmonic-extension": {
                "tolerance": 1e-6,
                "n": [1, 2],
                "points": 20,
                "seed": 7,
                "t_check": 1.0,
            },
            "diamagnetic": {
                "tolerance": 0.05,
                "b2_grid": [0.1, 5.0, 50],
                "b4_grid": [0.1, 2.9, 29],
                "domination_grid": [0.01, 0.5, 50],
                "crossing": 2.99,
            },
        }

    @property
    def check_names(self) -> list[str]:
        return list(self._checks)

    def run(
        self,
        only: str | None = None,
        tolerance: float | None = None,
        n: int | None = None,
    ) -> VerificationReport:
        """
        Run every check, or only the named one.

        Args:
            only: Name of a single check
            tolerance: Overrides the configured relative tolerances; the
                diamagnetic crossing keeps its tolerance in t
            n: Restricts the harmonic-extension check to one ball

        Raises:
            InvalidArgumentError: If ``only`` names no check
        """
        if only is not None and only not in self._checks:
            raise InvalidArgumentError(
                f"unknown check {only!r}; choose from {', '.join(self._checks)}"
            )
        names = [only] if only else list(self._checks)

        results = []
        for name in names:
            params = dict(self._config.get(name) or self._get_default_config()[name])
            if name == "harmonic-extension" and n is not None:
                params["n"] = [n]
            configured = float(params.get("tolerance", 1e-8))
            override = tolerance is not None and name not in ABSOLUTE_T_CHECKS
            tol = tolerance if override and tolerance is not None else configured
            results.append(self._run_check(name, params, tol))

        report = VerificationReport(checks=results)
        logger.info("Verification finished", checks=len(results), passed=report.passed)
        return report

    def _run_check(self, name: str, params: dict[str, Any], tolerance: float) -> CheckResult:
        try:
            passed, max_error, details = self._checks[name](params, tolerance)
        except MagSteklovError as e:
            logger.error("Check raised", check=name, error=str(e))
            return CheckResult(
                name=name,
                status="error",
                max_error=None,
                tolerance=tolerance,
                details={"error": str(e)},
            )
        logger.info("Check finished", check=name, passed=passed, max_error=max_error)
        return CheckResult(
            name=name,
            status="pass" if passed else "fail",
            max_error=max_error,
            tolerance=tolerance,
            details=details,
        )

    # Checks

    def _zero_modes(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        for k in range(1, int(params["k_max"]) + 1):
            worst = max(worst, abs(s3_coexact_eigenvalue(k, 0, -1, k + 1)))
            worst = max(worst, s1_hodge_spectrum(float(k), k).lowest.value)
        return worst <= tol, worst, {"k_max": params["k_max"]}

    def _b2_oracle(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        cases = 0
        for k in params["k"]:
            for conjugate in (False, True) if k > 0 else (False,):
                family = _disk_family(k, conjugate)
                for t in params["t"]:
                    closed = b2_steklov_eigenvalue(k, family, t)
                    oracle = steklov_eigenvalue_oracle(disk_system(k, family, t))
                    worst = max(worst, _relative(oracle, closed))
                    cases += 1
        return worst <= tol, worst, {"cases": cases}

    def _b4_coexact_oracle(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        skipped: list[str] = []
        for k in range(1, int(params["k_max"]) + 1):
            for p in range(k + 1):
                for sign in (1, -1):
                    for t in params["t"]:
                        spec = RadialSystemSpec("B4Coexact", k, t, p=p, conjugate=sign == -1)
                        try:
                            closed = b4_steklov_coexact(k, p, sign, t)
                            oracle = steklov_eigenvalue_oracle(spec)
                        except MagSteklovError as e:
                            skipped.append(f"k={k} p={p} sign={sign} t={t}: {e}")
                            continue
                        worst = max(worst, _relative(closed, oracle))
        # A case that could not be compared counts against the check.
        return not skipped and worst <= tol, worst, {"skipped": skipped}

    def _series_specs(self, k_max: int, t: float) -> list[RadialSystemSpec]:
        specs = [RadialSystemSpec("B2", 0, t)]
        for k in range(1, k_max + 1):
            specs += [RadialSystemSpec("B2", k, t, conjugate=c) for c in (False, True)]
            for p in range(k + 1):
                specs.append(RadialSystemSpec("B4Exact", k, t, p=p))
                specs += [
                    RadialSystemSpec("B4Coexact", k, t, p=p, conjugate=c) for c in (False, True)
                ]
        return specs

    def _series_residual(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        checked = 0
        for t in params["t"]:
            for spec in self._series_specs(int(params["k_max"]), t):
                for branch in series_solve(spec):
                    if branch is not None:
                        worst = max(worst, ode_residual(branch, spec, params["r"]))
                        checked += 1
        return worst <= tol, worst, {"branches": checked}

    def _closed_form_residual(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        skipped: list[str] = []
        k_max = int(params["k_max"])
        for t in params["t"]:
            for k in range(k_max + 1):
                for conjugate in (False, True) if k > 0 else (False,):
                    spec = RadialSystemSpec("B2", k, t, conjugate=conjugate)
                    profile = b2_closed_form_profile(k, t, conjugate)
                    worst = max(worst, ode_residual(profile, spec, params["r"]))
            for k in range(1, min(k_max, 3) + 1):
                for p in range(k + 1):
                    for sign in (1, -1):
                        spec = RadialSystemSpec("B4Coexact", k, t, p=p, conjugate=sign == -1)
                        try:
                            profile = b4_coexact_closed_form_profile(k, p, sign, t)
                            worst = max(worst, ode_residual(profile, spec, params["r"]))
                        except ZeroDivisionError:
                            skipped.append(f"k={k} p={p} sign={sign} t={t}")
        return not skipped and worst <= tol, worst, {"skipped": skipped}

    def _w_branch_ratio(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        for k in params["k"]:
            for t in params["t"]:
                _z, w = series_solve(RadialSystemSpec("B2", k, t))
                assert w is not None
                ratios = np.array([w.hat_P(r) / w_branch_closed_form(k, t, r) for r in params["r"]])
                worst = max(worst, float(np.ptp(ratios) / abs(np.mean(ratios))))
        return worst <= tol, worst, {}

    def _ivp_crosscheck(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        for case in params["cases"]:
            spec = RadialSystemSpec(
                case["domain"],
                case["k"],
                case["t"],
                p=case.get("p", 0),
                conjugate=case.get("conjugate", False),
            )
            worst = max(
                worst,
                _relative(steklov_eigenvalue_ivp(spec), steklov_eigenvalue_oracle(spec)),
            )
        return worst <= tol, worst, {"cases": len(params["cases"])}

    def _galerkin(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        slack = float(params.get("slack", 1e-9))
        worst = 0.0
        passed = True
        details: dict[str, Any] = {}
        for case in params["cases"]:
            k, t, conjugate = case["k"], case["t"], case.get("conjugate", False)
            closed = b2_steklov_eigenvalue(k, _disk_family(k, conjugate), t)
            values = [
                rayleigh_galerkin_b2(GalerkinConfig(k=k, t=t, basis_size=n, conjugate=conjugate))
                for n in params["basis_sizes"]
            ]
            monotone = all(b <= a + slack for a, b in zip(values, values[1:], strict=False))
            above = all(v >= closed - slack for v in values)
            error = abs(values[-1] - closed)
            passed = passed and monotone and above and error <= tol
            worst = max(worst, error)
            details[f"k={k} t={t} conjugate={conjugate}"] = {
                "values": values,
                "closed_form": closed,
                "monotone": monotone,
                "upper_bound": above,
            }
        return passed, worst, details

    def _reconcile(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        passed = True
        verdicts = []
        for k, p, t in params["points"]:
            report = reconcile_b4_exact(int(k), int(p), float(t), tolerance=tol)
            candidates = [v for v in (report.theorem_value, report.proof_value) if v is not None]
            error = min((_relative(v, report.oracle_value) for v in candidates), default=np.inf)
            worst = max(worst, float(error))
            passed = passed and bool(report.matching_variants)
            verdicts.append(
                {
                    "k": k,
                    "p": p,
                    "t": t,
                    "oracle": report.oracle_value,
                    "matches": report.matching_variants,
                }
            )
        return passed, worst, {"verdicts": verdicts}

    def _harmonic_extension(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        worst = 0.0
        passed = True
        for n in params["n"]:
            points = random_interior_points(n, int(params["points"]), int(params["seed"]))
            report = verify_harmonic_extension_b2n(n, float(params["t_check"]), points, tol)
            worst = max(
                worst,
                report.laplacian_residual,
                report.lie_residual,
                report.eta_residual,
                report.im_ratio_deviation,
            )
            passed = passed and report.passed
        return passed, worst, {"n": params["n"]}

    def _diamagnetic(self, params: dict[str, Any], tol: float) -> CheckOutcome:
        b2 = check_violation("b2", _grid(params["b2_grid"]))
        b4 = check_violation("b4", _grid(params["b4_grid"]))
        dominated = all(
            row.dominated
            for domain in ("b2", "b4")
            for row in check_violation(domain, _grid(params["domination_grid"])).rows
        )
        crossing = b4.crossing_t if b4.crossing_t is not None else locate_b4_crossing()
        error = abs(crossing - float(params["crossing"])) if crossing is not None else np.inf
        passed = (
            all(r.violated for r in b2.rows)
            and all(r.violated for r in b4.rows)
            and dominated
            and error <= tol
        )
        return passed, float(error), {"crossing_t": crossing, "dominated": dominated}

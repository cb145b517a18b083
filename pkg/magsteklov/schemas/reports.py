"""
Report Schemas
==============
Pydantic models for bound coefficients, verification checks and run configs.
"""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from magsteklov.schemas.spectrum import ModeIndex

Domain = Literal["s1", "s3", "b2", "b4"]
OutputFormat = Literal["csv", "json", "svg"]
Command = Literal["spectrum", "first", "figure", "verify", "diamagnetic"]
FigureName = Literal["fig1-left", "fig1-right", "fig2"]


class BoundCoefficients(BaseModel):
    """Quadratic upper bound sigma0 + c1 t + c2 t^2 on the first eigenvalue."""

    model_config = ConfigDict(frozen=True)

    sigma0: float
    c1: float
    c2: float = Field(..., ge=0)
    n: int = Field(..., ge=1)

    def evaluate(self, t: float) -> float:
        return self.sigma0 + self.c1 * t + self.c2 * t * t


class LowestEigenvalueReport(BaseModel):
    """The printed lowest-eigenvalue expression next to the branches it should match."""

    t: float
    printed: float
    exact_branch: float
    enumerated_min: float
    enumerated_mode: ModeIndex


class ReconcileReport(BaseModel):
    """Both printed exact-family expressions compared with the radial oracle."""

    k: int
    p: int
    t: float
    theorem_value: float | None
    proof_value: float | None
    oracle_value: float
    theorem_matches: bool
    proof_matches: bool
    tolerance: float

    @property
    def matching_variants(self) -> list[str]:
        found = []
        if self.theorem_matches:
            found.append("TheoremStatement")
        if self.proof_matches:
            found.append("ProofQPrime")
        return found


class HarmonicExtensionReport(BaseModel):
    """Finite-difference audit of the explicit extension on B^{2n}."""

    n: int
    points: int
    laplacian_residual: float
    lie_residual: float
    eta_residual: float
    im_ratio_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(
            self.laplacian_residual,
            self.lie_residual,
            self.eta_residual,
            self.im_ratio_deviation,
        ) <= self.tolerance


class ViolationRow(BaseModel):
    """One grid point of a diamagnetic comparison."""

    t: float
    bound: float
    actual: float
    sigma0: float
    violated: bool
    dominated: bool


class ViolationReport(BaseModel):
    """Diamagnetic comparison over a t grid."""

    domain: Literal["b2", "b4"]
    rows: list[ViolationRow]
    last_violated_t: float | None
    crossing_t: float | None = None


class CheckResult(BaseModel):
    """One entry of the verification report."""

    name: str
    status: Literal["pass", "fail", "error"]
    max_error: float | None
    tolerance: float
    details: dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """Top-level verification report."""

    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_document(self) -> dict[str, Any]:
        return {"checks": [c.model_dump() for c in self.checks], "pass": self.passed}


class RunConfig(BaseModel):
    """Validated command-line invocation."""

    command: Command
    domain: Domain | None = None
    t: float | None = Field(default=None, ge=0)
    t_start: float | None = Field(default=None, ge=0)
    t_stop: float | None = Field(default=None, ge=0)
    t_steps: int | None = Field(default=None, ge=2)
    k_max: int | None = Field(default=None, ge=1)
    format: OutputFormat = "csv"
    out: str | None = None
    tolerance: float | None = Field(default=None, gt=0)
    only: str | None = None
    n: int | None = None
    figure: FigureName | None = None

    @model_validator(mode="after")
    def check_ranges(self) -> "RunConfig":
        swept = self.t_start is not None or self.t_stop is not None
        if swept:
            if self.t_start is None or self.t_stop is None:
                raise ValueError("--t-start and --t-stop go together")
            if self.t_stop <= self.t_start:
                raise ValueError("t range must be nonempty")
            if self.t is not None:
                raise ValueError("give either --t or a t range")
        if self.command == "spectrum" and self.t is None:
            raise ValueError("spectrum needs --t")
        if self.command == "first" and self.t is None and not swept:
            raise ValueError("first needs --t or --t-start/--t-stop")
        if self.command in ("spectrum", "first", "diamagnetic") and self.domain is None:
            raise ValueError(f"{self.command} needs --domain")
        if self.command == "diamagnetic" and self.domain not in ("b2", "b4"):
            raise ValueError("diamagnetic needs --domain b2 or b4")
        if self.command == "figure" and self.figure is None:
            raise ValueError("figure needs a figure name")
        if self.n is not None and self.n not in (1, 2):
            raise ValueError("--n must be 1 or 2")
        return self

    def t_grid(self, default_steps: int) -> list[float]:
        """Explicit grid for sweeps; a single --t yields one point."""
        if self.t is not None:
            return [self.t]
        assert self.t_start is not None and self.t_stop is not None
        steps = self.t_steps or default_steps
        width = (self.t_stop - self.t_start) / (steps - 1)
        return [self.t_start + i * width for i in range(steps)]

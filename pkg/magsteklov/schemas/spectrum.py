"""
Spectrum Schemas
================
Pydantic models for modes, eigenvalue records and spectra.
"""

import math
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Family(str, Enum):
    """Eigenvalue branch families across the four model spaces."""

    S1_FUNCTION = "S1Function"
    S1_VOLUME_FORM = "S1VolumeForm"
    S3_FUNCTION = "S3Function"
    S3_EXACT = "S3Exact"
    S3_COEXACT_PLUS = "S3CoexactPlus"
    S3_COEXACT_MINUS = "S3CoexactMinus"
    B2_K_ZERO = "B2KZero"
    B2_PLUS = "B2Plus"
    B2_MINUS = "B2Minus"
    B4_EXACT = "B4Exact"
    B4_COEXACT_PLUS = "B4CoexactPlus"
    B4_COEXACT_MINUS = "B4CoexactMinus"


_K_ZERO_ALLOWED = {Family.S1_FUNCTION, Family.S1_VOLUME_FORM, Family.S3_FUNCTION, Family.B2_K_ZERO}
_USES_P = {
    Family.S3_FUNCTION,
    Family.S3_EXACT,
    Family.S3_COEXACT_PLUS,
    Family.S3_COEXACT_MINUS,
    Family.B4_EXACT,
    Family.B4_COEXACT_PLUS,
    Family.B4_COEXACT_MINUS,
}


class MagneticParameter(BaseModel):
    """Coupling strength t multiplying the fixed Killing potential."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(..., ge=0)

    @field_validator("t")
    @classmethod
    def finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("t must be finite")
        return v


class ModeIndex(BaseModel):
    """
    Discrete labels of an eigenvalue branch.

    ``sign`` distinguishes the two signed branches (k + t)^2 and (k - t)^2 on
    the circle; it is unused elsewhere.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0)
    p: int | None = Field(default=None, ge=0)
    family: Family
    sign: Literal[1, -1] | None = None

    @model_validator(mode="after")
    def check_ranges(self) -> "ModeIndex":
        if self.k == 0 and self.family not in _K_ZERO_ALLOWED:
            raise ValueError(f"{self.family.value} requires k >= 1")
        if self.family == Family.B2_K_ZERO and self.k != 0:
            raise ValueError("B2KZero requires k = 0")
        if self.family in _USES_P:
            if self.p is None or self.p > self.k:
                raise ValueError(f"{self.family.value} requires 0 <= p <= k")
        elif self.p is not None:
            raise ValueError(f"{self.family.value} takes no p")
        return self

    def label(self) -> str:
        parts = [self.family.value, f"k={self.k}"]
        if self.p is not None:
            parts.append(f"p={self.p}")
        if self.sign is not None:
            parts.append("+" if self.sign > 0 else "-")
        return " ".join(parts)


class EigenvalueRecord(BaseModel):
    """One eigenvalue with its branch label; ``multiplicity=None`` means unspecified."""

    model_config = ConfigDict(frozen=True)

    value: float
    mode: ModeIndex
    multiplicity: int | None = Field(default=None, ge=1)

    @field_validator("value")
    @classmethod
    def finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("eigenvalue must be finite")
        return v


class ExcludedPoint(BaseModel):
    """A mode skipped because its closed form hit a pole."""

    model_config = ConfigDict(frozen=True)

    mode: ModeIndex
    t: float
    reason: str


class Spectrum(BaseModel):
    """Ascending multiset of eigenvalue records enumerated up to ``cutoff``."""

    model_config = ConfigDict(frozen=True)

    records: tuple[EigenvalueRecord, ...]
    cutoff: int = Field(..., ge=0)
    t: float = Field(..., ge=0)
    excluded: tuple[ExcludedPoint, ...] = ()

    @model_validator(mode="after")
    def check_sorted(self) -> "Spectrum":
        values = [r.value for r in self.records]
        if any(a > b for a, b in zip(values, values[1:], strict=False)):
            raise ValueError("records must be sorted ascending")
        if any(r.mode.k > self.cutoff for r in self.records):
            raise ValueError("record beyond the cutoff")
        return self

    @classmethod
    def from_records(
        cls,
        records: list[EigenvalueRecord],
        cutoff: int,
        t: float,
        excluded: list[ExcludedPoint] | None = None,
    ) -> "Spectrum":
        ordered = sorted(records, key=lambda r: r.value)
        return cls(records=tuple(ordered), cutoff=cutoff, t=t, excluded=tuple(excluded or ()))

    @property
    def lowest(self) -> EigenvalueRecord:
        return self.records[0]

    def values(self) -> list[float]:
        return [r.value for r in self.records]

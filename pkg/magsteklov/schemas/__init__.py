"""
Schemas
=======
Pydantic models for spectra, reports and run configuration.
"""

from magsteklov.schemas.reports import (
    BoundCoefficients,
    CheckResult,
    HarmonicExtensionReport,
    LowestEigenvalueReport,
    ReconcileReport,
    RunConfig,
    VerificationReport,
    ViolationReport,
    ViolationRow,
)
from magsteklov.schemas.spectrum import (
    EigenvalueRecord,
    ExcludedPoint,
    Family,
    MagneticParameter,
    ModeIndex,
    Spectrum,
)

__all__ = [
    "BoundCoefficients",
    "CheckResult",
    "EigenvalueRecord",
    "ExcludedPoint",
    "Family",
    "HarmonicExtensionReport",
    "LowestEigenvalueReport",
    "MagneticParameter",
    "ModeIndex",
    "ReconcileReport",
    "RunConfig",
    "Spectrum",
    "VerificationReport",
    "ViolationReport",
    "ViolationRow",
]

"""
Test Configuration
==================
Pytest fixtures for the magnetic spectra tests.
"""

import math
from pathlib import Path

import pytest

from magsteklov.main import configure_logging
from magsteklov.schemas.spectrum import (
    EigenvalueRecord,
    ExcludedPoint,
    Family,
    ModeIndex,
    Spectrum,
)

E = math.e


@pytest.fixture(scope="session", autouse=True)
def structured_logging() -> None:
    """Route structlog through the stdlib handlers on stderr."""
    configure_logging()


@pytest.fixture
def disk_spectrum() -> Spectrum:
    """A small hand-built disk spectrum at t = 1."""
    records = [
        EigenvalueRecord(
            value=1 / (E - 2), mode=ModeIndex(k=1, family=Family.B2_PLUS), multiplicity=1
        ),
        EigenvalueRecord(
            value=1 / math.tanh(0.5), mode=ModeIndex(k=0, family=Family.B2_K_ZERO), multiplicity=1
        ),
        EigenvalueRecord(value=E, mode=ModeIndex(k=1, family=Family.B2_MINUS), multiplicity=1),
    ]
    return Spectrum.from_records(records, cutoff=1, t=1.0)


@pytest.fixture
def b4_partial_spectrum() -> Spectrum:
    """A B4 spectrum with one excluded pole point and unspecified multiplicities."""
    records = [
        EigenvalueRecord(value=1.5, mode=ModeIndex(k=1, p=0, family=Family.B4_EXACT)),
        EigenvalueRecord(value=2.0, mode=ModeIndex(k=1, p=1, family=Family.B4_COEXACT_PLUS)),
    ]
    excluded = [
        ExcludedPoint(
            mode=ModeIndex(k=1, p=0, family=Family.B4_COEXACT_MINUS),
            t=0.0,
            reason="Laguerre denominator vanishes",
        )
    ]
    return Spectrum.from_records(records, cutoff=1, t=0.0, excluded=excluded)


@pytest.fixture
def verify_config(tmp_path: Path) -> Path:
    """A reduced verification config with coarse grids."""
    path = tmp_path / "verify.yaml"
    path.write_text(
        "zero-modes:\n"
        "  tolerance: 1.0e-12\n"
        "  k_max: 2\n"
        "b2-oracle:\n"
        "  tolerance: 1.0e-8\n"
        "  k: [0, 1]\n"
        "  t: [1.0]\n"
    )
    return path

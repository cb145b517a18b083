"""
Application Configuration
=========================
Centralized configuration management using Pydantic Settings.
"""

import os
from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from ``MAGSTEKLOV_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="MAGSTEKLOV_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Parallelism
    threads: int | None = Field(default=None, ge=1)

    # Enumeration
    k_max: int = Field(default=50, ge=1)
    b4_k_max: int = Field(default=12, ge=1)
    b4_exact_variant: Literal["ProofQPrime", "TheoremStatement"] = "ProofQPrime"

    # Series
    series_terms: int = Field(default=120, ge=20)
    kummer_max_terms: int = Field(default=10_000, ge=64)

    # Figures
    figure_samples: int = Field(default=256, ge=2)
    figure_k_max: int = Field(default=3, ge=1)
    fig2_t_stop: float = Field(default=10.0, gt=0)

    # Verification
    verify_config_path: str = "config/verify.yaml"
    default_tolerance: float = Field(default=1e-8, gt=0)

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    log_format: Literal["json", "console"] = "json"

    @property
    def worker_count(self) -> int:
        """Threads available to sweeps."""
        return self.threads or os.cpu_count() or 1


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()

# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# Configuration management for amm-verify.
#
# Defaults live in a pydantic model tree. The only value sourced from the
# environment is the worker count (AMM_THREADS), read through
# pydantic-settings.

import os
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from amm_verify.errors import ValidationError


class ArithmeticConfig(BaseModel):
    """Bounds for exact and residue Stirling arithmetic."""

    oracle_bound: int = Field(
        default=2000, ge=0, description="Largest n accepted by stirling_exact"
    )
    escalation_cap: int = Field(
        default=512,
        ge=8,
        description="Widest residue (bits) tried by nu2_stirling",
    )

    model_config = ConfigDict(validate_assignment=True)


class ScanConfig(BaseModel):
    """Budgets for the periodic residue scan."""

    budget_bits: int = Field(
        default=34, ge=1, le=48, description="A scan may take 2^budget_bits steps"
    )
    block_bits: int = Field(
        default=16, ge=4, le=24, description="Positions per vectorised block"
    )

    model_config = ConfigDict(validate_assignment=True)


class VerifierConfig(BaseModel):
    """Search limits for the proof pipeline."""

    max_ell: int = Field(default=6, ge=0, description="Largest ell searched")
    max_level: int = Field(
        default=24, ge=1, description="Largest verification level M"
    )

    model_config = ConfigDict(validate_assignment=True)


class LoggingConfig(BaseModel):
    """Configuration for logging."""

    level: str = Field(default="WARNING", description="Logging level")
    format: str = Field(
        default="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        description="Log format",
    )

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of {valid_levels}")
        return v.upper()

    model_config = ConfigDict(validate_assignment=True)


class AmmConfig(BaseModel):
    """Main configuration class for amm-verify."""

    arithmetic: ArithmeticConfig = Field(default_factory=ArithmeticConfig)
    scan: ScanConfig = Field(default_factory=ScanConfig)
    verifier: VerifierConfig = Field(default_factory=VerifierConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    threads: Optional[int] = Field(
        default=None, ge=1, description="Worker count (None = all cores)"
    )

    model_config = ConfigDict(validate_assignment=True)


class RuntimeSettings(BaseSettings):
    """Environment overrides. Only the worker count is read."""

    threads: Optional[int] = Field(default=None, ge=1)

    model_config = SettingsConfigDict(env_prefix="AMM_", extra="ignore")


# Global configuration instance
_config: Optional[AmmConfig] = None


def get_config() -> AmmConfig:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = AmmConfig()
    return _config


def reload_config() -> AmmConfig:
    """Reset the global configuration to its defaults."""
    global _config
    _config = AmmConfig()
    return _config


def update_config(**changes: Any) -> AmmConfig:
    """Update top-level or nested settings, e.g. ``scan={"budget_bits": 30}``."""
    config = get_config()
    for key, value in changes.items():
        if key not in AmmConfig.model_fields:
            raise ValidationError(key, value, reason="unknown configuration key")
        current = getattr(config, key)
        if isinstance(current, BaseModel) and isinstance(value, dict):
            for sub_key, sub_value in value.items():
                setattr(current, sub_key, sub_value)
        else:
            setattr(config, key, value)
    return config


def resolve_threads(cli_value: Optional[int] = None) -> int:
    """Worker count: AMM_THREADS, then the explicit value, then the config."""
    env_threads = RuntimeSettings().threads
    if env_threads is not None:
        return env_threads
    if cli_value is not None:
        if cli_value < 1:
            raise ValidationError("threads", cli_value, expected="integer >= 1")
        return cli_value
    if get_config().threads is not None:
        return get_config().threads
    return os.cpu_count() or 1


# Configuration validation
def validate_config(config: AmmConfig) -> List[str]:
    """Validate configuration and return a list of warnings."""
    warnings = []

    if config.scan.budget_bits > 40:
        warnings.append(
            "scan.budget_bits above 40 allows scans that run for hours"
        )
    if config.scan.block_bits > config.scan.budget_bits:
        warnings.append("scan.block_bits exceeds scan.budget_bits")
    if config.arithmetic.oracle_bound > 5000:
        warnings.append(
            "arithmetic.oracle_bound above 5000 makes exact fallbacks slow"
        )
    if config.verifier.max_level > 26:
        warnings.append(
            "verifier.max_level above 26 enumerates more than 2^26 classes"
        )

    return warnings


__all__ = [
    "ArithmeticConfig",
    "ScanConfig",
    "VerifierConfig",
    "LoggingConfig",
    "AmmConfig",
    "RuntimeSettings",
    "get_config",
    "reload_config",
    "update_config",
    "resolve_threads",
    "validate_config",
]

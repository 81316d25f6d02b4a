"""Configuration management for the pattpeak command line using Pydantic."""

import logging
import os
from pathlib import Path
from typing import Optional

import yaml
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

LOGGER = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "json", "latex")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class CliConfig(BaseSettings):
    """Settings shared by every pattpeak command."""

    model_config = SettingsConfigDict(
        env_prefix="PATTPEAK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    output_format: str = Field(
        default="text",
        description="Output format (text, json or latex)",
    )
    cache_dir: Optional[Path] = Field(
        default=None,
        description="Directory for cached avoidance-class histograms",
    )
    max_n: int = Field(
        default=8,
        ge=1,
        description="Largest degree the verifiers and searches go up to",
    )
    jobs: int = Field(
        default=1,
        ge=1,
        description="Worker processes used for verification workloads",
    )
    log_level: str = Field(
        default="WARNING",
        description="Logging level",
    )

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        fmt = v.lower().strip()
        if fmt not in OUTPUT_FORMATS:
            raise ValueError(
                f"Invalid output format '{v}'; must be one of {', '.join(OUTPUT_FORMATS)}"
            )
        return fmt

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper().strip()
        if level not in LOG_LEVELS:
            raise ValueError(
                f"Invalid log level '{v}'; must be one of {', '.join(LOG_LEVELS)}"
            )
        return level

    @classmethod
    def load(cls, config_file: Optional[Path] = None, **overrides) -> "CliConfig":
        """Load configuration from an optional YAML file, the environment
        and explicit overrides.

        Args:
            config_file: Optional path to YAML configuration file
            **overrides: Values given on the command line; None means unset

        Returns:
            Loaded configuration

        Note:
            Overrides win over environment variables, which win over the
            YAML file, which wins over the defaults.
        """
        yaml_data = {}

        if config_file is None:
            env_config_file = os.getenv("PATTPEAK_CONFIG_FILE")
            if env_config_file:
                config_file = Path(env_config_file)

        if config_file and config_file.exists():
            LOGGER.info(f"Loading configuration from {config_file}")
            with open(config_file) as f:
                yaml_data = yaml.safe_load(f) or {}
        elif config_file:
            LOGGER.warning(f"Configuration file {config_file} not found, ignoring")

        # Init kwargs beat the environment in pydantic-settings, so YAML
        # values only fill in what the environment leaves unset
        env_fields = {name for name in cls.model_fields
                      if f"PATTPEAK_{name.upper()}" in os.environ}
        values = {k: v for k, v in yaml_data.items()
                  if k in cls.model_fields and k not in env_fields}
        values.update({k: v for k, v in overrides.items() if v is not None})

        return cls(**values)

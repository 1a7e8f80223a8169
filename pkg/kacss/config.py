from __future__ import annotations

import logging
import os
from typing import Any, Dict, Optional

import yaml
from kacss import BASE_PATH
from pydantic.dataclasses import dataclass

logger = logging.getLogger(__name__)

CONFIG_PATH = BASE_PATH / "config"


@dataclass(frozen=True)
class LoggingSettings:
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s:%(lineno)d - %(funcName)s - %(levelname)s - %(message)s"


@dataclass(frozen=True)
class SimplexSettings:
    max_iterations: int = 50000


@dataclass(frozen=True)
class CuttingPlaneSettings:
    max_rounds: int = 5000
    seed_degree_cuts: bool = True


@dataclass(frozen=True)
class GeneratorSettings:
    max_attempts: int = 1000


@dataclass(frozen=True)
class ColumnGenerationSettings:
    max_rounds: int = 2000


@dataclass(frozen=True)
class BranchAndBoundSettings:
    node_budget: int = 2000000
    lp_bound_max_depth: int = 0
    progress_interval: int = 10000


@dataclass(frozen=True)
class RoundingSettings:
    stream_in: int = 1
    stream_out: int = 2

    def __post_init__(self) -> None:
        if self.stream_in == self.stream_out:
            raise ValueError("Sampling streams for T_in and T_out must differ")


class Config:
    @staticmethod
    def configure_logging(settings: Optional[LoggingSettings] = None, level: Optional[str] = None) -> None:
        """Configure logging for the entire application, an explicit level overrides the configured one"""
        settings = settings or LoggingSettings()
        log_level = (level or settings.level).split("#")[0].strip().upper()

        valid_levels = logging.getLevelNamesMapping().keys()
        if log_level not in valid_levels:
            log_level = "INFO"

        logging.basicConfig(
            level=getattr(logging, log_level),
            format=settings.format,
            force=True,  # Ensure our configuration takes precedence
        )
        logger.debug(f"Logging configured with level {log_level} and format {settings.format}")

    def __init__(self, *, config_path: Optional[str] = None) -> None:
        self._load_config(config_path)

    def _load_config(self, config_path: Optional[str] = None) -> None:
        """Load configuration from YAML"""
        actual_path = config_path or str(CONFIG_PATH / "default.yaml")
        if config_path is None and not os.path.isfile(actual_path):
            logger.debug(f"No configuration at '{actual_path}', using built-in defaults")
            self._config: Dict[str, Any] = {}
            return
        logger.info(f"Loading configuration from '{actual_path}'")

        with open(actual_path, "r", encoding="utf-8") as f:
            try:
                loaded = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ValueError(f"Configuration file '{actual_path}' is not valid YAML: {e}") from e

        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Configuration file '{actual_path}' must contain a mapping")
        self._config = loaded

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get configuration value using dot notation"""
        try:
            keys = key_path.split(".")
            value = self._config
            for key in keys:
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def _section(self, name: str) -> Dict[str, Any]:
        values = self._config.get(name, {})
        if not isinstance(values, dict):
            raise ValueError(f"Configuration section '{name}' must be a mapping")
        return values

    def get_logging_settings(self) -> LoggingSettings:
        return LoggingSettings(**self._section("logging"))

    def get_simplex_settings(self) -> SimplexSettings:
        return SimplexSettings(**self._section("simplex"))

    def get_cutting_plane_settings(self) -> CuttingPlaneSettings:
        return CuttingPlaneSettings(**self._section("cutting_plane"))

    def get_generator_settings(self) -> GeneratorSettings:
        return GeneratorSettings(**self._section("generator"))

    def get_column_generation_settings(self) -> ColumnGenerationSettings:
        return ColumnGenerationSettings(**self._section("column_generation"))

    def get_branch_and_bound_settings(self) -> BranchAndBoundSettings:
        return BranchAndBoundSettings(**self._section("branch_and_bound"))

    def get_rounding_settings(self) -> RoundingSettings:
        return RoundingSettings(**self._section("rounding"))

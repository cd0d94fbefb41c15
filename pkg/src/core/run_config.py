"""Per-run configuration merged from a JSON file and command-line flags"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from ..config import get_settings
from .errors import ConfigError

ALL_SUITES = "all"
MAX_SEED = 2**64


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Knobs of one `lab` invocation; unset sizes fall back to each suite's defaults"""

    suite: str = Field(..., description="Suite name or 'all'")
    seed: int = Field(..., ge=0, lt=MAX_SEED, description="Root seed of every random stream")
    n: Optional[int] = Field(None, ge=1, description="Dimension / number of coordinates")
    p: Optional[float] = Field(None, gt=0.0, lt=1.0, description="Cube bias")
    N: Optional[int] = Field(None, ge=1, description="Family size for empirical suprema")
    samples: int = Field(default=20_000, ge=1, description="Monte Carlo draws")
    instances: int = Field(default_factory=lambda: get_settings().instances, ge=1)
    tol: Optional[float] = Field(None, gt=0.0, description="Tolerance override for every report")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="Per-report overrides")
    out: Optional[Path] = Field(None, description="Report path; stdout when unset")
    format: ReportFormat = Field(default=ReportFormat.JSON)
    timings: bool = Field(default=False, description="Serialize wall times")
    threads: int = Field(default_factory=lambda: get_settings().threads, ge=1)

    class Config:
        json_schema_extra = {
            "example": {
                "suite": "cube",
                "seed": 7,
                "n": 4,
                "p": 0.5,
                "instances": 25,
                "format": "json",
            }
        }

    @field_validator("tolerances")
    @classmethod
    def _positive_tolerances(cls, value: Dict[str, float]) -> Dict[str, float]:
        for name, tolerance in value.items():
            if not tolerance > 0:
                raise ValueError(f"tolerance for {name} must be positive")
        return value

    @classmethod
    def from_sources(
        cls, flags: Mapping[str, Any], config_path: Optional[Path] = None
    ) -> "RunConfig":
        """
        Merge a JSON config file under command-line flags (flags win).

        The seed falls back to LAB_SEED when neither source sets it.

        Raises:
            ConfigError: unreadable file, invalid values, or no seed anywhere
        """
        merged: Dict[str, Any] = {}
        if config_path is not None:
            try:
                loaded = json.loads(Path(config_path).read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"cannot read config {config_path}: {e}") from e
            if not isinstance(loaded, dict):
                raise ConfigError(f"config {config_path} must hold a JSON object")
            merged.update(loaded)
        merged.update({k: v for k, v in flags.items() if v is not None})
        if merged.get("seed") is None:
            merged["seed"] = get_settings().seed
        if merged.get("seed") is None:
            raise ConfigError("a seed is required: pass --seed, set it in the config or LAB_SEED")
        try:
            return cls(**merged)
        except ValidationError as e:
            raise ConfigError(f"invalid run configuration: {e}") from e

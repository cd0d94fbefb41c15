"""Lab settings read from the environment (LAB_*) and an optional .env file"""

from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LabSettings(BaseSettings):
    """
    Process-wide knobs.

    Per-run parameters live in RunConfig; these only cover what an operator
    sets once per machine (parallelism, log verbosity, defaults).
    """

    model_config = SettingsConfigDict(
        env_prefix="LAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    threads: int = Field(default=4, ge=1, description="Worker threads for instance sweeps")
    log_level: str = Field(default="INFO", description="loguru level for the stderr sink")
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64, description="Fallback seed")
    instances: int = Field(default=25, ge=1, description="Seeded instances per suite")


@lru_cache(maxsize=1)
def get_settings() -> LabSettings:
    """Get the cached settings instance"""
    return LabSettings()

"""Core abstractions for the lab"""

from .errors import (
    ConfigError,
    DomainError,
    LabError,
    PreconditionError,
    SizeLimitError,
    SolverError,
)
from .report import LabSummary, SuiteSummary, VerificationReport
from .run_config import RunConfig
from .suite import SuiteInstance, SuiteMetadata, VerificationSuite, get_suite_registry

__all__ = [
    "ConfigError",
    "DomainError",
    "LabError",
    "PreconditionError",
    "SizeLimitError",
    "SolverError",
    "LabSummary",
    "SuiteSummary",
    "VerificationReport",
    "RunConfig",
    "SuiteInstance",
    "SuiteMetadata",
    "VerificationSuite",
    "get_suite_registry",
]

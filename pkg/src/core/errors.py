"""Exception hierarchy shared by every lab module"""

from typing import Optional


class LabError(Exception):
    """Root of all lab errors"""


class DomainError(LabError, ValueError):
    """Argument outside the mathematical domain of an operation"""


class PreconditionError(LabError):
    """Hypothesis of an inequality not satisfied by the instance"""

    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message if witness is None else f"{message} (witness: {witness})")
        self.witness = witness


class SizeLimitError(LabError):
    """Enumeration would exceed a hard size cap"""


class SolverError(LabError):
    """A solver finished without a valid optimality certificate"""


class ConfigError(LabError):
    """Malformed run configuration or unknown suite"""

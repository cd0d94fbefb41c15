"""Verification suite abstract base class - the lab's extension interface"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from .random import lab_rng
from .report import VerificationReport
from .run_config import RunConfig


@dataclass(frozen=True)
class SuiteInstance:
    """One seeded unit of work: an id that orders reports, and the payload to check"""

    instance_id: str
    payload: Any


class SuiteMetadata:
    """Metadata describing a verification suite"""

    def __init__(
        self,
        name: str,
        module: str,
        description: str,
        randomized: bool = True,
        tags: Optional[List[str]] = None,
    ):
        self.name = name
        self.module = module
        self.description = description
        self.randomized = randomized
        self.tags = tags or []


class VerificationSuite(ABC):
    """
    Abstract base class for all verification suites.

    Each module of the lab (entropy, cube, gauss, ...) implements this interface.

    Example implementation:

        class CubeSuite(VerificationSuite):
            @property
            def metadata(self) -> SuiteMetadata:
                return SuiteMetadata(
                    name="cube",
                    module="cube-dynamics",
                    description="LSI and hypercontractivity on the biased cube",
                )

            def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
                rng = lab_rng(config.seed, self.index)
                ...

            def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
                return [lsi_check(instance.payload)]
    """

    #: Stream id for this suite's random numbers; set by the registry.
    index: int = 0

    @property
    @abstractmethod
    def metadata(self) -> SuiteMetadata:
        """
        Return metadata describing this suite.

        Returns:
            SuiteMetadata with name, module and description
        """
        pass

    @abstractmethod
    def build_instances(self, config: RunConfig) -> List[SuiteInstance]:
        """
        Build the suite's instances: fixed examples first, then seeded ones.

        Args:
            config: run configuration (seed, sizes, instance count)

        Returns:
            Instances with unique, sortable ids

        Note:
            Instance k must depend only on (config.seed, self.index, k) so that the
            result does not depend on how instances are scheduled.
        """
        pass

    @abstractmethod
    def check(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        """
        Run every inequality of the suite on one instance.

        Raises:
            LabError: a precondition or solver certificate fails; the run aborts
        """
        pass

    def rng(self, config: RunConfig, k: int) -> np.random.Generator:
        """Stream of instance k: (seed, suite index, k)"""
        return lab_rng(config.seed, self.index, k)

    def instance_id(self, k: int) -> str:
        return f"{self.metadata.name}-{k:05d}"

    def tolerance(self, config: RunConfig, name: str, default: float) -> float:
        """Per-report tolerance: config.tolerances[name], then config.tol, then default"""
        if name in config.tolerances:
            return config.tolerances[name]
        return config.tol if config.tol is not None else default

    def run_instance(self, instance: SuiteInstance, config: RunConfig) -> List[VerificationReport]:
        """Check one instance and stamp its reports with the instance id"""
        return [r.with_instance(instance.instance_id) for r in self.check(instance, config)]

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} name={self.metadata.name}>"


class SuiteRegistry:
    """Registry of all available verification suites"""

    def __init__(self) -> None:
        self._suites: Dict[str, VerificationSuite] = {}

    def register(self, suite: VerificationSuite) -> None:
        """Register a suite; its stream index is its registration order"""
        existing = self._suites.get(suite.metadata.name)
        suite.index = existing.index if existing else len(self._suites) + 1
        self._suites[suite.metadata.name] = suite

    def get(self, name: str) -> Optional[VerificationSuite]:
        return self._suites.get(name)

    def list_all(self) -> List[VerificationSuite]:
        return list(self._suites.values())

    def names(self) -> List[str]:
        return list(self._suites)

    def exists(self, name: str) -> bool:
        return name in self._suites


# Global registry instance
_suite_registry = SuiteRegistry()


def get_suite_registry() -> SuiteRegistry:
    """Get the global suite registry"""
    return _suite_registry

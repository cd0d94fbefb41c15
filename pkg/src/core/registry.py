"""
Registry initialization - register all verification suites.

Import this module to register all available suites. Registration order fixes
each suite's random stream index, so new suites go at the end.
"""

from loguru import logger

from .suite import get_suite_registry

from ..suites.entropy import EntropySuite
from ..suites.cube import CubeSuite
from ..suites.gauss import GaussSuite
from ..suites.convex import ConvexSuite
from ..suites.l1l2 import L1L2Suite
from ..suites.transport import TransportSuite
from ..suites.empirical import EmpiricalSuite


def register_all_suites():
    """Register all available verification suites"""

    registry = get_suite_registry()

    suites = [
        EntropySuite(),
        CubeSuite(),
        GaussSuite(),
        ConvexSuite(),
        L1L2Suite(),
        TransportSuite(),
        EmpiricalSuite(),
    ]

    for suite in suites:
        registry.register(suite)
        logger.debug(f"Registered suite: {suite.metadata.name} (stream {suite.index})")

    logger.debug(f"✓ Registered {len(suites)} verification suites")


# Auto-register on import
register_all_suites()

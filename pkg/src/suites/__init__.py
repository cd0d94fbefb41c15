"""One verification suite per module of the lab"""

from .convex import ConvexSuite
from .cube import CubeSuite
from .empirical import EmpiricalSuite
from .entropy import EntropySuite
from .gauss import GaussSuite
from .l1l2 import L1L2Suite
from .transport import TransportSuite

__all__ = [
    "ConvexSuite",
    "CubeSuite",
    "EmpiricalSuite",
    "EntropySuite",
    "GaussSuite",
    "L1L2Suite",
    "TransportSuite",
]

"""Report model - machine-readable record of one inequality instance"""

import math
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

from .errors import DomainError

DetailValue = Union[float, int, str, bool, None]


class VerificationReport(BaseModel):
    """
    One checked inequality lhs ≤ rhs.

    Every checker in the lab returns this format. Failing inequalities are
    reports with passed=False, never exceptions.
    """

    name: str = Field(..., description="Inequality name, e.g. 'cube_lsi'")
    lhs: float = Field(..., description="Left-hand side value")
    rhs: float = Field(..., description="Right-hand side value")
    margin: float = Field(..., description="rhs - lhs")
    tolerance: float = Field(..., ge=0.0, description="Absolute slack granted to the check")
    passed: bool = Field(..., alias="pass", description="lhs <= rhs + tolerance")
    witness: Optional[str] = Field(None, description="Point or instance descriptor")
    instance_id: Optional[str] = Field(None, description="Set by the orchestrator")
    skipped: bool = Field(default=False, description="Check not applicable to the instance")
    diagnostic: bool = Field(
        default=False, description="Tracked margin only; never counted as a failure"
    )
    details: Dict[str, DetailValue] = Field(default_factory=dict, description="Extra values")

    class Config:
        populate_by_name = True
        json_schema_extra = {
            "example": {
                "name": "cube_lsi",
                "lhs": 0.34657359027997264,
                "rhs": 0.5,
                "margin": 0.15342640972002736,
                "tolerance": 1e-10,
                "pass": True,
                "witness": "n=1 p=0.5",
                "instance_id": "cube-00003",
                "skipped": False,
                "diagnostic": False,
                "details": {"rho": 0.5},
            }
        }

    @classmethod
    def compare(
        cls,
        name: str,
        lhs: float,
        rhs: float,
        tolerance: float,
        witness: Optional[str] = None,
        diagnostic: bool = False,
        **details: DetailValue,
    ) -> "VerificationReport":
        """Build a report from the two sides; margin and pass are derived"""
        lhs = float(lhs)
        rhs = float(rhs)
        if math.isnan(lhs) or math.isnan(rhs):
            raise DomainError(f"{name}: NaN side (lhs={lhs}, rhs={rhs})")
        margin = rhs - lhs if not (math.isinf(lhs) and lhs == rhs) else 0.0
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            tolerance=tolerance,
            passed=lhs <= rhs + tolerance,
            witness=witness,
            diagnostic=diagnostic,
            details=dict(details),
        )

    @classmethod
    def agreement(
        cls, name: str, value: float, reference: float, tolerance: float, **details: DetailValue
    ) -> "VerificationReport":
        """|value - reference| ≤ tolerance·max(1, |reference|), as a report against 0"""
        return cls.compare(
            name,
            abs(float(value) - float(reference)),
            0.0,
            tolerance * max(1.0, abs(float(reference))),
            **details,
        )

    @classmethod
    def skip(cls, name: str, note: str, **details: DetailValue) -> "VerificationReport":
        """A check that does not apply; counts as passing"""
        return cls(
            name=name,
            lhs=0.0,
            rhs=0.0,
            margin=0.0,
            tolerance=0.0,
            passed=True,
            skipped=True,
            details={"note": note, **details},
        )

    @property
    def failed(self) -> bool:
        """Fails and gates the exit code"""
        return not self.passed and not self.diagnostic

    def with_instance(self, instance_id: str) -> "VerificationReport":
        return self.model_copy(update={"instance_id": instance_id})


class SuiteSummary(BaseModel):
    """Aggregated outcome of one suite run"""

    suite: str
    instances: int = Field(..., description="Instances run")
    failures: int = Field(..., description="Non-diagnostic reports with pass = false")
    min_margin: Optional[float] = Field(
        None, description="Smallest margin over gating, non-skipped reports"
    )
    wall_time: Optional[float] = Field(None, description="Seconds; only kept when timings are on")
    reports: List[VerificationReport] = Field(default_factory=list)

    @classmethod
    def from_reports(
        cls,
        suite: str,
        instances: int,
        reports: List[VerificationReport],
        wall_time: Optional[float] = None,
    ) -> "SuiteSummary":
        margins = [r.margin for r in reports if not (r.skipped or r.diagnostic)]
        return cls(
            suite=suite,
            instances=instances,
            failures=sum(1 for r in reports if r.failed),
            min_margin=min(margins) if margins else None,
            wall_time=wall_time,
            reports=reports,
        )


class LabSummary(BaseModel):
    """Top-level report document written by the CLI"""

    schema_version: int = Field(default=1, alias="schema")
    seed: int
    suites: List[SuiteSummary] = Field(default_factory=list)

    class Config:
        populate_by_name = True

    @property
    def failures(self) -> int:
        return sum(s.failures for s in self.suites)

    @property
    def instances(self) -> int:
        return sum(s.instances for s in self.suites)

    @property
    def min_margin(self) -> Optional[float]:
        margins = [s.min_margin for s in self.suites if s.min_margin is not None]
        return min(margins) if margins else None

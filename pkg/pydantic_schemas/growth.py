from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from pydantic_schemas.coefficient import BoundCheck, ExactnessProbe, ResidueComparison


class CheckStatus(str, Enum):
    passed = "pass"
    failed = "fail"
    indeterminate = "indeterminate"


class TheoremTag(str, Enum):
    delta = "Delta"
    q = "Q"
    classical = "Classical"


class Verdict(str, Enum):
    consistent = "consistent"
    hypothesis_violated = "hypothesis-violated"
    discrepancy_recorded = "discrepancy-recorded"


class GrowthEstimate(BaseModel):
    radii: List[float]
    max_modulus: List[float]
    tau_hat: float = Field(default=0.0, ge=0)
    q_growth: List[float] = Field(default_factory=list)
    threshold: Optional[float] = None
    monotone: bool = True
    confidence: str = ""


class HypothesisCheck(BaseModel):
    name: str
    status: CheckStatus
    margin: Optional[float] = None
    samples: List[float] = Field(default_factory=list)
    note: str = ""


class LiouvilleReport(BaseModel):
    """
    Sampled hypothesis checks, coefficient tables and the conclusion residual
    for one Liouville-type statement. The verdict never claims a proof.
    """

    theorem: TheoremTag
    hypotheses: List[HypothesisCheck]
    coefficients: List[ResidueComparison]
    coefficient_tolerance: float
    conclusion: str
    conclusion_residual: float
    residual_tolerance: float
    verdict: Verdict
    growth: Optional[GrowthEstimate] = None
    exactness: Optional[ExactnessProbe] = None
    bounds: List[BoundCheck] = Field(default_factory=list)
    grids: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _consistent_means_all_passed(self):
        if self.verdict == Verdict.consistent:
            if any(check.status != CheckStatus.passed for check in self.hypotheses):
                raise ValueError("a consistent verdict needs every hypothesis check to pass")
            if any(abs(row.oracle) > self.coefficient_tolerance for row in self.coefficients if row.k >= 1):
                raise ValueError("a consistent verdict needs all k >= 1 coefficients within tolerance")
            if not self.conclusion_residual <= self.residual_tolerance:
                raise ValueError("a consistent verdict needs the conclusion residual within tolerance")
        return self

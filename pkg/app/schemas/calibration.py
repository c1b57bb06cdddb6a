from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import Field

from app.schemas.config import ReportModel, RealArray
from app.schemas.mueller import MuellerReport


class CalibrationInput(ReportModel):
    M: RealArray
    aw: RealArray
    amw: RealArray


class WProvenance(str, Enum):
    kernel_invertible = "KernelInvertible"
    kernel_combination = "KernelCombination"
    kernel_first = "KernelFirst"
    real_eig_smallest = "RealEigSmallest"
    symmetrized_smallest = "SymmetrizedSmallest"


class WSelection(ReportModel):
    W: RealArray
    provenance: WProvenance
    eigenvalue_used: Optional[float] = None
    kernel_dimension: int = 0
    epsilon_used: float = 0.0


class CalibrationStep(ReportModel):
    step: str
    detail: Dict[str, Any] = Field(default_factory=dict)


class CalibrationResult(ReportModel):
    H: RealArray
    selection: WSelection
    aw_used: RealArray
    new_M_raw: RealArray
    new_M_final: RealArray
    mueller_report: MuellerReport
    determinant: float
    diagnostics: List[CalibrationStep]

    @property
    def succeeded(self) -> bool:
        return self.mueller_report.verdict and self.determinant != 0.0

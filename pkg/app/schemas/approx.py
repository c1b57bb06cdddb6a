from enum import Enum
from typing import Optional

from app.schemas.config import ReportModel, RealArray


class ApproxPath(str, Enum):
    already_mueller = "AlreadyMueller"
    shifted_by_e11 = "ShiftedByE11"
    already_invertible = "AlreadyInvertible"
    shifted_by_identity = "ShiftedByIdentity"
    composite = "Composite"


class ApproxResult(ReportModel):
    output: RealArray
    changed: bool
    epsilon_used: float = 0.0
    # Coefficient of the E11 shift, 0 when no shift was applied.
    e11_shift: float = 0.0
    path: ApproxPath
    label: Optional[str] = None
    # Set when the E11 shift was checked for cone primitivity.
    primitive: Optional[bool] = None
    # Outcome of the Mueller and determinant recheck of composite outputs.
    verified: Optional[bool] = None


class ApproxReport(ApproxResult):
    output_file: str

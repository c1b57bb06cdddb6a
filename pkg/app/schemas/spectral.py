from typing import List, Optional

from app.schemas.config import ReportModel, RealArray
from app.schemas.stokes import ConeClass


class SpectralReport(ReportModel):
    rho: float
    rho_is_eigenvalue: bool
    rho_simple: bool
    peripheral_eigenvalues: List[complex]
    peripheral_all_simple: bool
    perron_vector: Optional[RealArray] = None
    perron_in_K: Optional[ConeClass] = None
    unique_K_eigenvector: bool
    degree_condition: bool

    @property
    def birkhoff_holds(self) -> bool:
        return self.rho_is_eigenvalue and self.degree_condition and self.perron_in_K not in (None, ConeClass.outside)


class ConeDecision(ReportModel):
    holds: bool
    report: SpectralReport


class PowerIterationTrace(ReportModel):
    iterates: List[RealArray]
    converged: bool
    steps: int
    rho: float
    limit: Optional[RealArray] = None
    limit_residual: Optional[float] = None
    limit_class: Optional[ConeClass] = None
    lambda_w: Optional[float] = None

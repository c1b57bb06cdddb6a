from typing import NamedTuple, Optional

from app.schemas.config import ReportModel, RealArray


class Gap(NamedTuple):
    b: float
    q: float


class MuellerReport(ReportModel):
    verdict: bool
    min_q: float
    argmin_q: RealArray
    min_b: float
    argmin_b: RealArray
    samples: int
    resolution: int
    tol: float


class NecessaryConditions(ReportModel):
    first_column_stokes: bool
    first_row_stokes: bool
    zero_a_implies_zero: bool
    submatrix_norm_ok: bool

    @property
    def passed(self) -> bool:
        return all((self.first_column_stokes, self.first_row_stokes, self.zero_a_implies_zero, self.submatrix_norm_ok))


class GridSample(ReportModel):
    """Per-point values of one sampling pass, in evaluation order."""
    x: RealArray
    y: RealArray
    hemisphere: RealArray
    q: RealArray
    b: RealArray


class NormReport(ReportModel):
    spectral_norm: float
    determinant: float
    # M / M[0, 0], absent when the (1,1) entry is zero.
    normalized: Optional[RealArray] = None

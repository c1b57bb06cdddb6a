from typing import Optional

from app.schemas.config import ReportModel, RealArray


class Fixture(ReportModel):
    name: str
    matrix: RealArray
    expected_mueller: Optional[bool] = None
    expected_primitive: Optional[bool] = None
    source: str

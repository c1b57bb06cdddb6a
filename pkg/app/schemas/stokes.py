from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import Field

from app.schemas.config import ReportModel


class ConeClass(str, Enum):
    interior = "Interior"
    boundary = "Boundary"
    outside = "Outside"


class StokesVector(ReportModel):
    """A 4-vector (a; v) tested against the Stokes cone.

    ``a`` is the intensity and ``v = (x, y, z)`` the polarization part. The
    type accepts any finite 4-vector; membership is a question for
    :class:`app.services.stokes.StokesService`.
    """
    a: float
    v: Tuple[float, float, float]

    @classmethod
    def from_array(cls, values) -> "StokesVector":
        values = np.asarray(values, dtype=float).ravel()
        if values.shape != (4,):
            raise ValueError(f"a Stokes vector has 4 components, got {values.size}")
        return cls(a=values[0], v=tuple(values[1:]))

    def to_array(self) -> np.ndarray:
        return np.array([self.a, *self.v], dtype=float)

    def __neg__(self) -> "StokesVector":
        return StokesVector.from_array(-self.to_array())


class SliceDecomposition(ReportModel):
    scale: float
    slice_point: StokesVector


class StokesCheck(ReportModel):
    vector: StokesVector
    q: float
    cone_class: ConeClass = Field(..., alias="class")

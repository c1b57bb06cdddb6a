from pydantic import validator

from app.config import settings
from app.schemas.config import ReportModel, ComplexArray


class Tolerances(ReportModel):
    zero_tol: float = settings.zero_tol
    round_decimals: int = settings.round_decimals

    @validator("zero_tol")
    def zero_tol_positive(cls, value):
        if not value > 0:
            raise ValueError("zero_tol must be positive")
        return value

    @classmethod
    def default(cls) -> "Tolerances":
        return cls(zero_tol=settings.zero_tol, round_decimals=settings.round_decimals)


class EigenPair(ReportModel):
    value: complex
    vector: ComplexArray
    algebraic_multiplicity: int

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0

    @property
    def modulus(self) -> float:
        return abs(self.value)

    def real_vector(self):
        return self.vector.real.copy()

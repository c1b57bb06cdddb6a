import os

from pydantic import BaseModel, BaseSettings, Field, validator


class GridSettings(BaseModel):
    resolution: int = 1001
    # Half-width of the sampling square, the unit disk plus a 0.25 margin.
    extent: float = 1.25
    chunk_rows: int = 128
    ring: bool = True


class PowerSettings(BaseModel):
    m_max: int = 10000
    tol: float = 1e-10
    window: int = 3


class CalibrationSettings(BaseModel):
    kernel_rtol: float = 1e-4
    raw_decimals: int = 8
    candidates: int = 16
    seed: int = 20231


class Settings(BaseSettings):
    version: str = "mueller-cone/1"
    env: str = os.getenv("ENVIRONMENT", "dev")
    zero_tol: float = Field(1e-9, env="MUELLER_CONE_TOL")
    round_decimals: int = 12
    grid: GridSettings = GridSettings()
    power: PowerSettings = PowerSettings()
    ecm: CalibrationSettings = CalibrationSettings()
    use_cache: bool = Field(False, env="USE_CACHE")

    @validator("zero_tol")
    def zero_tol_positive(cls, value):
        if not value > 0:
            raise ValueError("zero tolerance must be positive")
        return value


settings = Settings()

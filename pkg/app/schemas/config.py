import numpy as np
from pydantic import BaseModel


def encode_array(value: np.ndarray):
    flat = np.asarray(value).ravel()
    if np.iscomplexobj(flat):
        return [[float(z.real), float(z.imag)] for z in flat]
    return [float(x) for x in flat]


def encode_complex(value: complex):
    return [float(value.real), float(value.imag)]


# Matrices and vectors leave the package as flat row-major number lists.
JSON_ENCODERS = {
    np.ndarray: encode_array,
    complex: encode_complex,
    np.bool_: bool,
    np.integer: int,
    np.floating: float,
}


class RealArray(np.ndarray):
    """Finite real array field, coerced from nested lists."""

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, value):
        array = np.array(value, dtype=float)
        if not np.all(np.isfinite(array)):
            raise ValueError("array entries must be finite")
        array.setflags(write=False)
        return array


class ComplexArray(np.ndarray):
    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, value):
        array = np.array(value, dtype=complex)
        array.setflags(write=False)
        return array


# Use this model as the base for every report and value type
class ReportModel(BaseModel):
    class Config:
        allow_population_by_field_name = True
        arbitrary_types_allowed = True
        allow_mutation = False
        json_encoders = JSON_ENCODERS

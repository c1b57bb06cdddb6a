from typing import Generic, Optional, TypeVar

from pydantic import Field
from pydantic.generics import GenericModel

from app.constants import SCHEMA_VERSION
from app.schemas.config import JSON_ENCODERS

DataT = TypeVar('DataT')


# Generic report envelope
class Payload(GenericModel, Generic[DataT]):
    schema_version: str = Field(SCHEMA_VERSION, alias="schema")
    command: str
    data: Optional[DataT]

    class Config:
        allow_population_by_field_name = True
        arbitrary_types_allowed = True
        json_encoders = JSON_ENCODERS

    def render(self) -> str:
        return self.json(by_alias=True)

from typing import Optional

from pydantic import BaseModel

from app.schemas.header import FileHeader
from app.schemas.report import SpaceReport, ValidationReport


class InspectResponse(BaseModel):
    """Response for POST /codec/inspect"""
    header: FileHeader
    payload_bytes: int
    space: Optional[SpaceReport] = None
    validation: Optional[ValidationReport] = None

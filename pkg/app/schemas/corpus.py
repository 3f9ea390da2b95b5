from pydantic import BaseModel, Field


class ZipfSpec(BaseModel):
    """Parameters of a synthetic Zipf text; equal specs give equal texts"""
    sigma: int = Field(ge=2)
    alpha: float = Field(gt=0)
    n: int = Field(ge=0)
    seed: int = Field(ge=0, lt=2 ** 64)

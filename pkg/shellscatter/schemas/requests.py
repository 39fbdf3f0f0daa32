from typing import Optional

from pydantic import BaseModel, Field, PositiveFloat

from shellscatter.schemas.scattering import Method
from shellscatter.schemas.shell_config import ShellConfigPayload
from shellscatter.schemas.sweep import SweepSpec


class ConfigRequest(BaseModel):
    config: ShellConfigPayload


class SCoefficientRequest(ConfigRequest):
    ell: int = Field(ge=0)
    k: PositiveFloat
    method: Method = Method.DET_RATIO


class PhaseCurveRequest(ConfigRequest):
    ell: int = Field(ge=0)
    sweep: SweepSpec


class CrossSectionRequest(ConfigRequest):
    k: PositiveFloat
    ell_max: Optional[int] = Field(default=None, ge=0)


class OracleCompareRequest(ConfigRequest):
    ell: int = Field(ge=0)
    k: PositiveFloat
    numerov: bool = False
    steps: Optional[int] = None


class BoundStatesRequest(ConfigRequest):
    ell: int = Field(ge=0)
    kappa_max: Optional[PositiveFloat] = None
    grid_points: Optional[int] = None

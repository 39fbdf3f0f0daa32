from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_serializer


def complex_to_json(value: complex) -> Dict[str, float]:
    return {"re": value.real, "im": value.imag}


class BoundarySide(str, Enum):
    """Boundary value k^2 + i0 (PLUS) or k^2 - i0 (MINUS)."""
    PLUS = "plus"
    MINUS = "minus"


class Method(str, Enum):
    DET_RATIO = "DetRatio"
    DIRECT = "Direct"


class ChannelResult(BaseModel):
    ell: int
    k: float
    s_value: complex
    delta: float  # principal value in (-pi, pi]
    det_plus: complex
    method: Method

    @field_serializer('s_value', 'det_plus', when_used='json')
    def serialize_complex(self, value: complex) -> Dict[str, float]:
        return complex_to_json(value)


class PhaseCurve(BaseModel):
    ell: int
    k_grid: List[float]
    deltas: List[float]
    branch_anchor: str


class CrossSection(BaseModel):
    """Total cross section with its per-channel terms (length^2)."""
    k: float
    ell_max: int
    sigma_total: float
    partial_terms: List[float] = Field(default_factory=list)


class OracleComparison(BaseModel):
    """S_l(k) by every route, with pairwise deviations."""
    ell: int
    k: float
    s_det_ratio: complex
    s_direct: complex
    s_transfer: complex
    deviations: Dict[str, float]
    tolerance: float
    numerov_delta: Optional[float] = None
    analytic_delta_mod_pi: Optional[float] = None
    numerov_deviation: Optional[float] = None
    numerov_tolerance: Optional[float] = None
    passed: bool

    @field_serializer('s_det_ratio', 's_direct', 's_transfer', when_used='json')
    def serialize_complex(self, value: complex) -> Dict[str, float]:
        return complex_to_json(value)

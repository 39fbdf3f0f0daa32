from enum import Enum
from typing import Optional

from pydantic import BaseModel


class Regime(str, Enum):
    """s-wave threshold behaviour of a double shell."""
    REGULAR = "Regular"
    EXCEPTIONAL_NONDEGENERATE = "ExceptionalNondegenerate"
    DEGENERATE = "Degenerate"


class ThresholdReport(BaseModel):
    c0: float
    gamma0: float
    c2: float
    regime: Regime
    scattering_length: Optional[float] = None  # Regular only
    exceptional_ratio: Optional[float] = None  # Gamma0 / C2, ExceptionalNondegenerate only


class ZeroEnergySolution(BaseModel):
    """
    Zero-energy s-wave solution of a double shell, piecewise harmonic:
    a on (0, R1), b + c/r on (R1, R2), d + e/r beyond R2.
    """
    a: float
    b: float
    c: float
    d: float
    e: float


class CriticalCoupling(BaseModel):
    r1: float
    r2: float
    theta1: float
    theta2_critical: Optional[float] = None
    c2: Optional[float] = None
    gamma0: Optional[float] = None
    regime_at_critical: Optional[Regime] = None


class ZeroEnergyReport(BaseModel):
    """Exterior constants (d, e) for any N, and the full solution when N = 2."""
    d: float
    e: float
    scattering_length: Optional[float] = None
    double_shell: Optional[ZeroEnergySolution] = None

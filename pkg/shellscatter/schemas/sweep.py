from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, Field, PositiveFloat, model_validator


class Spacing(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class SweepSpec(BaseModel):
    """Wavenumber grid and channel list for a sweep."""
    k_min: PositiveFloat
    k_max: PositiveFloat
    points: int = Field(ge=2)
    spacing: Spacing = Spacing.LINEAR
    ell_list: List[int] = Field(default_factory=lambda: [0])

    @model_validator(mode='after')
    def validate_range(self):
        if self.k_min >= self.k_max:
            raise ValueError(f"k_min ({self.k_min}) must be less than k_max ({self.k_max})")
        if any(ell < 0 for ell in self.ell_list):
            raise ValueError("channel indices must be non-negative")
        return self

    def k_grid(self) -> np.ndarray:
        if self.spacing == Spacing.LOG:
            return np.geomspace(self.k_min, self.k_max, self.points)
        return np.linspace(self.k_min, self.k_max, self.points)

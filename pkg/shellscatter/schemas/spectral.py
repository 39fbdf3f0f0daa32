from pydantic import BaseModel, PositiveFloat


class BoundState(BaseModel):
    """Negative-energy eigenvalue -kappa^2 in channel ell."""
    ell: int
    kappa: PositiveFloat
    energy: float
    det_residual: float

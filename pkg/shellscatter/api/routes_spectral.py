from typing import List

from fastapi import APIRouter

from shellscatter.schemas.requests import BoundStatesRequest
from shellscatter.schemas.shell_config import validate
from shellscatter.schemas.spectral import BoundState
from shellscatter.services import spectral

router = APIRouter(prefix="/api/spectral", tags=["spectral"])


@router.post("/bound-states", response_model=List[BoundState])
def bound_states(request: BoundStatesRequest):
    """Bound states of one channel, deepest first."""
    cfg = validate(request.config.radii, request.config.alphas)
    return spectral.find_bound_states(cfg, request.ell, request.kappa_max, request.grid_points)

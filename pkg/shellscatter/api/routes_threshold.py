from fastapi import APIRouter, Query

from shellscatter.schemas.requests import ConfigRequest
from shellscatter.schemas.shell_config import as_double_shell, check_shells, validate
from shellscatter.schemas.threshold import CriticalCoupling, ThresholdReport, ZeroEnergyReport
from shellscatter.services import doubleshell, oracle

router = APIRouter(prefix="/api/threshold", tags=["threshold"])


@router.post("/report", response_model=ThresholdReport)
def threshold_report(request: ConfigRequest):
    """C0, Gamma0, C2 and regime of a double shell."""
    cfg = as_double_shell(validate(request.config.radii, request.config.alphas))
    return doubleshell.threshold_constants(cfg)


@router.get("/critical", response_model=CriticalCoupling)
def critical(
    r1: float = Query(..., gt=0),
    r2: float = Query(..., gt=0),
    theta1: float = Query(...),
):
    """Critical theta2 for the given inner shell."""
    check_shells([r1, r2], [0.0, 0.0])
    return doubleshell.critical_coupling(r1, r2, theta1)


@router.post("/zero-energy", response_model=ZeroEnergyReport)
def zero_energy(request: ConfigRequest):
    cfg = validate(request.config.radii, request.config.alphas)
    return oracle.zero_energy_report(cfg)

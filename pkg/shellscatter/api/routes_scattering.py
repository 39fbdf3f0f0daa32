from fastapi import APIRouter

from shellscatter.schemas.requests import (
    CrossSectionRequest,
    OracleCompareRequest,
    PhaseCurveRequest,
    SCoefficientRequest,
)
from shellscatter.schemas.scattering import ChannelResult, CrossSection, Method, OracleComparison, PhaseCurve
from shellscatter.schemas.shell_config import validate
from shellscatter.services import oracle, smatrix

router = APIRouter(prefix="/api/scattering", tags=["scattering"])


@router.post("/s-coefficient", response_model=ChannelResult)
def s_coefficient(request: SCoefficientRequest):
    """S_l(k) by the determinant ratio or the direct solve."""
    cfg = validate(request.config.radii, request.config.alphas)
    if request.method == Method.DIRECT:
        return smatrix.s_coefficient_direct(cfg, request.ell, request.k)
    return smatrix.s_coefficient(cfg, request.ell, request.k)


@router.post("/phase-curve", response_model=PhaseCurve)
def phase_curve(request: PhaseCurveRequest):
    """Unwrapped phase shift over the sweep grid."""
    cfg = validate(request.config.radii, request.config.alphas)
    return smatrix.phase_curve(cfg, request.ell, request.sweep.k_grid())


@router.post("/cross-section", response_model=CrossSection)
def cross_section(request: CrossSectionRequest):
    cfg = validate(request.config.radii, request.config.alphas)
    return smatrix.total_cross_section(cfg, request.k, request.ell_max)


@router.post("/oracle-compare", response_model=OracleComparison)
def oracle_compare(request: OracleCompareRequest):
    """All S_l(k) routes side by side; `passed` reports the tolerance check."""
    cfg = validate(request.config.radii, request.config.alphas)
    return oracle.compare_routes(cfg, request.ell, request.k, numerov=request.numerov, steps=request.steps)

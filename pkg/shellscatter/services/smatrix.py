"""
Channel S-matrix coefficients, phase shifts and cross sections.

S_l(k) = det K_l(k^2 - i0) / det K_l(k^2 + i0) = conj(D) / D with
D = det K_l(k^2 + i0), so delta_l(k) = -arg D. A second route evaluates
S_l = 1 - 2ik b^T Theta K_l^-1 b through a linear solve.
"""
import cmath
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from shellscatter.core.concurrency import ordered_map
from shellscatter.core.config import settings
from shellscatter.core.errors import (
    GridTooCoarseError,
    InvalidEnergyError,
    InvalidGridError,
    NearSingularBoundaryError,
)
from shellscatter.schemas.scattering import (
    BoundarySide,
    ChannelResult,
    CrossSection,
    Method,
    PhaseCurve,
)
from shellscatter.schemas.shell_config import ShellConfig
from shellscatter.services.boundary import b_vector, k_matrix
from shellscatter.services.cmatrix import determinant, hadamard_bound, solve
from shellscatter.services.specfun import MAX_ORDER

logger = logging.getLogger(__name__)

NEAR_SINGULAR = 1e-13
MAX_GRID_RATIO = 1.1
MAX_WRAPPED_STEP = math.pi / 4
MAX_REFINEMENTS = 6
DEFAULT_K_LADDER = (1e-3, 5e-4, 2.5e-4)


def _check_wavenumber(k: float) -> None:
    if not math.isfinite(k) or k <= 0:
        raise InvalidEnergyError(f"k must be a positive finite number, got {k}")


def _principal(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    return math.pi if angle <= -math.pi else angle


def _free_result(ell: int, k: float, method: Method) -> ChannelResult:
    return ChannelResult(ell=ell, k=k, s_value=1.0 + 0.0j, delta=0.0, det_plus=1.0 + 0.0j, method=method)


def _boundary_determinant(cfg: ShellConfig, ell: int, k: float) -> Tuple[np.ndarray, complex]:
    km = k_matrix(cfg, ell, k, BoundarySide.PLUS)
    det = determinant(km)
    scale = hadamard_bound(km)
    if not abs(det) >= NEAR_SINGULAR * scale:
        raise NearSingularBoundaryError(
            f"|det K_{ell}(k^2+i0)| = {abs(det):.3e} below {NEAR_SINGULAR:g} * {scale:.3e} at k={k}"
        )
    return km, det


def s_coefficient(cfg: ShellConfig, ell: int, k: float) -> ChannelResult:
    """
    S_l(k) as the determinant ratio conj(D)/D.

    Raises:
        InvalidEnergyError: k <= 0
        NearSingularBoundaryError: |D| < 1e-13 times the Hadamard bound of K
    """
    _check_wavenumber(k)
    if cfg.n_shells == 0:
        return _free_result(ell, k, Method.DET_RATIO)

    _, det = _boundary_determinant(cfg, ell, k)
    s_value = det.conjugate() / det
    return ChannelResult(
        ell=ell,
        k=k,
        s_value=s_value,
        delta=_principal(-cmath.phase(det)),
        det_plus=det,
        method=Method.DET_RATIO,
    )


def s_coefficient_direct(cfg: ShellConfig, ell: int, k: float) -> ChannelResult:
    """
    S_l(k) = 1 - 2ik b^T Theta K^-1 b.

    Raises:
        InvalidEnergyError: k <= 0
        SingularMatrixError: K_l(k^2 + i0) numerically singular
    """
    _check_wavenumber(k)
    if cfg.n_shells == 0:
        return _free_result(ell, k, Method.DIRECT)

    km = k_matrix(cfg, ell, k, BoundarySide.PLUS)
    b = b_vector(cfg, ell, k).values
    thetas = np.asarray(cfg.thetas, dtype=np.float64)
    c = solve(km, b)
    s_value = 1.0 - 2j * k * complex(np.sum(b * thetas * c))
    det = determinant(km)
    return ChannelResult(
        ell=ell,
        k=k,
        s_value=s_value,
        delta=_principal(-cmath.phase(det)),
        det_plus=det,
        method=Method.DIRECT,
    )


def _wrap_half_pi(step: float) -> float:
    """Reduce a phase difference modulo pi into (-pi/2, pi/2]."""
    return step - math.pi * math.ceil(step / math.pi - 0.5)


def _check_grid(k_grid: Sequence[float]) -> np.ndarray:
    grid = np.asarray(k_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidGridError("k grid must be a non-empty one-dimensional sequence")
    if not np.all(np.isfinite(grid)) or np.any(grid <= 0):
        raise InvalidGridError("k grid values must be positive and finite")
    if np.any(np.diff(grid) <= 0):
        raise InvalidGridError("k grid must be strictly increasing")
    return grid


def _refined_change(cfg: ShellConfig, ell: int, k_lo: float, k_hi: float, d_lo: float, d_hi: float) -> float:
    """Continuous phase change across [k_lo, k_hi], resolved on geometric sub-grids."""
    ratio = k_hi / k_lo
    base = max(2, math.ceil(math.log(ratio) / math.log(MAX_GRID_RATIO)))
    for doubling in range(MAX_REFINEMENTS + 1):
        n = base * 2**doubling
        sub = np.geomspace(k_lo, k_hi, n + 1)
        phases = [d_lo] + [s_coefficient(cfg, ell, float(k)).delta for k in sub[1:-1]] + [d_hi]
        steps = [_wrap_half_pi(b - a) for a, b in zip(phases[:-1], phases[1:])]
        if max(abs(s) for s in steps) <= MAX_WRAPPED_STEP:
            logger.debug("refined [%g, %g] with %d sub-intervals", k_lo, k_hi, n)
            return float(sum(steps))
    raise GridTooCoarseError(
        f"phase of channel l={ell} not resolved on [{k_lo}, {k_hi}] after {MAX_REFINEMENTS} refinements"
    )


def _unwrap(cfg: ShellConfig, ell: int, grid: np.ndarray, principal: List[float]) -> PhaseCurve:
    deltas = [principal[0]]
    for i in range(len(grid) - 1):
        k_lo, k_hi = float(grid[i]), float(grid[i + 1])
        change = _wrap_half_pi(principal[i + 1] - principal[i])
        if k_hi / k_lo > MAX_GRID_RATIO or abs(change) > MAX_WRAPPED_STEP:
            change = _refined_change(cfg, ell, k_lo, k_hi, principal[i], principal[i + 1])
        if abs(change) >= math.pi / 2:
            raise GridTooCoarseError(
                f"phase of channel l={ell} changes by {change:.3f} rad between k={k_lo} and k={k_hi}"
            )
        deltas.append(deltas[-1] + change)

    shift = math.floor((math.pi / 2 - deltas[0]) / math.pi)
    deltas = [d + shift * math.pi for d in deltas]
    anchor = (
        f"delta(k={grid[0]:.6g}) shifted by {shift:+d}*pi into (-pi/2, pi/2]; "
        "continuity by multiples of pi"
    )
    return PhaseCurve(ell=ell, k_grid=grid.tolist(), deltas=deltas, branch_anchor=anchor)


def sweep_channel(
    cfg: ShellConfig,
    ell: int,
    k_grid: Sequence[float],
    threads: Optional[int] = None,
) -> Tuple[List[ChannelResult], PhaseCurve]:
    """Evaluate S_l over a grid and return the per-point results with the unwrapped curve."""
    grid = _check_grid(k_grid)
    results = ordered_map(lambda k: s_coefficient(cfg, ell, float(k)), list(grid), threads)
    curve = _unwrap(cfg, ell, grid, [r.delta for r in results])
    logger.info("swept l=%d over %d points in [%g, %g]", ell, len(grid), grid[0], grid[-1])
    return results, curve


def phase_curve(
    cfg: ShellConfig,
    ell: int,
    k_grid: Sequence[float],
    threads: Optional[int] = None,
) -> PhaseCurve:
    """
    Continuous phase shift along an increasing k grid.

    Principal phases are joined by multiples of pi; intervals that are wide
    (ratio > 1.1) or show a large step are resolved on finer geometric
    sub-grids. The whole curve is then shifted by a multiple of pi so that
    delta at the smallest k lies in (-pi/2, pi/2].

    Raises:
        InvalidGridError: grid empty, non-positive or not increasing
        GridTooCoarseError: the phase changes by pi/2 or more within one interval
    """
    _, curve = sweep_channel(cfg, ell, k_grid, threads)
    return curve


def default_ell_max(cfg: ShellConfig, k: float) -> int:
    ell_max = math.ceil(k * cfg.outer_radius) + settings.cross_section_ell_margin
    if ell_max > MAX_ORDER:
        logger.warning("default l_max %d at k=%g clamped to %d", ell_max, k, MAX_ORDER)
        ell_max = MAX_ORDER
    return ell_max


def total_cross_section(
    cfg: ShellConfig,
    k: float,
    ell_max: Optional[int] = None,
) -> CrossSection:
    """
    sigma(k) = 4pi/k^2 * sum_l (2l+1) sin^2 delta_l, with sin^2 delta taken as |S - 1|^2 / 4.

    ell_max defaults to ceil(k R_N) + margin (capped at 64).
    """
    _check_wavenumber(k)
    if ell_max is None:
        ell_max = default_ell_max(cfg, k)

    prefactor = 4.0 * math.pi / (k * k)
    terms = []
    for ell in range(ell_max + 1):
        s_value = s_coefficient(cfg, ell, k).s_value
        terms.append(prefactor * (2 * ell + 1) * abs(s_value - 1.0) ** 2 / 4.0)
    return CrossSection(k=k, ell_max=ell_max, sigma_total=float(sum(terms)), partial_terms=terms)


def extrapolated_scattering_length(
    cfg: ShellConfig,
    k_ladder: Sequence[float] = DEFAULT_K_LADDER,
) -> float:
    """
    s-wave scattering length from -delta_0(k)/k extrapolated to k = 0.

    Fits -delta_0/k as a polynomial in k^2 through the ladder points and
    returns the constant term. Only meaningful when the threshold is regular.
    """
    ladder = np.sort(np.asarray(k_ladder, dtype=np.float64))
    curve = phase_curve(cfg, 0, ladder, threads=1)
    values = -np.asarray(curve.deltas) / ladder
    coeffs = P.polyfit(ladder**2, values, len(ladder) - 1)
    return float(coeffs[0])

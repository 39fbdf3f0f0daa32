"""
Negative-energy spectrum per channel.

-kappa^2 is an eigenvalue in channel l exactly when det K_l(-kappa^2) = 0;
the determinant is real there, so roots are located by sign changes on a
geometric kappa grid and refined by bisection.
"""
import logging
import math
from typing import List, Optional

import numpy as np
from scipy import optimize

from shellscatter.core.concurrency import ordered_map
from shellscatter.core.config import settings
from shellscatter.core.errors import InvalidEnergyError, InvalidGridError
from shellscatter.schemas.shell_config import ShellConfig
from shellscatter.schemas.spectral import BoundState
from shellscatter.services.boundary import k_matrix_negative
from shellscatter.services.cmatrix import determinant

logger = logging.getLogger(__name__)

KAPPA_MIN = 1e-6
MAX_GRID_RATIO = 1.05
MIN_GRID_POINTS = 64
ROOT_TOLERANCE = 1e-12


def det_negative_energy(cfg: ShellConfig, ell: int, kappa: float) -> float:
    """det(I + m_l(-kappa^2) Theta)."""
    if cfg.n_shells == 0:
        return 1.0
    return determinant(k_matrix_negative(cfg, ell, kappa)).real


def kappa_grid(kappa_max: float, grid_points: int) -> np.ndarray:
    """Geometric grid on [1e-6, kappa_max] with adjacent ratio at most 1.05."""
    needed = math.ceil(math.log(kappa_max / KAPPA_MIN) / math.log(MAX_GRID_RATIO)) + 1
    return np.geomspace(KAPPA_MIN, kappa_max, max(grid_points, needed))


def find_bound_states(
    cfg: ShellConfig,
    ell: int,
    kappa_max: Optional[float] = None,
    grid_points: Optional[int] = None,
    threads: Optional[int] = None,
) -> List[BoundState]:
    """
    Bound states of channel l with kappa in (1e-6, kappa_max], deepest first.

    Only simple (sign-changing) roots of the determinant are found.

    Raises:
        InvalidEnergyError: kappa_max not above 1e-6
        InvalidGridError: fewer than 64 grid points
    """
    kappa_max = settings.kappa_max if kappa_max is None else kappa_max
    grid_points = settings.kappa_grid_points if grid_points is None else grid_points
    if not math.isfinite(kappa_max) or kappa_max <= KAPPA_MIN:
        raise InvalidEnergyError(f"kappa_max must exceed {KAPPA_MIN}, got {kappa_max}")
    if grid_points < MIN_GRID_POINTS:
        raise InvalidGridError(f"bound-state scan needs at least {MIN_GRID_POINTS} points, got {grid_points}")
    if cfg.n_shells == 0:
        return []

    grid = kappa_grid(kappa_max, grid_points)
    values = ordered_map(lambda kappa: det_negative_energy(cfg, ell, float(kappa)), list(grid), threads)

    def det(kappa: float) -> float:
        return det_negative_energy(cfg, ell, kappa)

    roots = []
    for i in range(len(grid) - 1):
        lo, hi = float(grid[i]), float(grid[i + 1])
        f_lo, f_hi = values[i], values[i + 1]
        if f_lo == 0.0:
            roots.append(lo)
        elif f_lo * f_hi < 0:
            result = optimize.root_scalar(
                det,
                bracket=[lo, hi],
                method="bisect",
                xtol=ROOT_TOLERANCE * lo,
                rtol=ROOT_TOLERANCE,
            )
            roots.append(result.root)
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))

    logger.info("channel l=%d: %d bound state(s) with kappa <= %g", ell, len(roots), kappa_max)
    states = [
        BoundState(ell=ell, kappa=kappa, energy=-kappa * kappa, det_residual=abs(det(kappa)))
        for kappa in roots
    ]
    return sorted(states, key=lambda state: state.kappa, reverse=True)

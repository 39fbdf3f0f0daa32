"""
Independent checks of S_l(k) that never form a boundary matrix.

- transfer_matrix_s: piecewise Riccati-Bessel matching across the shells
- numerov_phase_shift: direct integration of the radial equation
- zero_energy_exterior: piecewise-harmonic matching at k = 0

The reduced radial function w(r) is continuous at each shell and its
derivative jumps by alpha_j * w(R_j).
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from shellscatter.core.config import settings
from shellscatter.core.errors import (
    DegenerateBasisError,
    GridCollisionError,
    InvalidEnergyError,
    InvalidGridError,
)
from shellscatter.schemas.scattering import OracleComparison
from shellscatter.schemas.shell_config import ShellConfig, as_double_shell
from shellscatter.schemas.threshold import ZeroEnergyReport
from shellscatter.services.doubleshell import zero_energy_solution
from shellscatter.services.smatrix import s_coefficient, s_coefficient_direct
from shellscatter.services.specfun import bessel_basis

logger = logging.getLogger(__name__)

BASIS_TOLERANCE = 1e-12
MIN_NUMEROV_STEPS = 10_000
ZERO_EXTERIOR_TOLERANCE = 1e-12
_RESCALE_LIMIT = 1e200


@dataclass
class RadialState:
    """Reduced radial function w and its derivative at radius r."""
    r: float
    w: float
    wp: float


def _check_wavenumber(k: float) -> None:
    if not math.isfinite(k) or k <= 0:
        raise InvalidEnergyError(f"k must be a positive finite number, got {k}")


def _riccati(ell: int, k: float, r: float) -> Tuple[float, float, float, float]:
    """u = t j_l(t), v = t y_l(t) with t = k r, and their r-derivatives."""
    table = bessel_basis(ell, k * r)
    t = k * r
    j, y = table.j[ell].real, table.y[ell].real
    jp, yp = table.jp[ell].real, table.yp[ell].real
    return t * j, t * y, k * (j + t * jp), k * (y + t * yp)


def transfer_matrix_s(cfg: ShellConfig, ell: int, k: float) -> complex:
    """
    S_l(k) by matching w = A u + B v from shell to shell.

    Starts from the regular solution (A, B) = (1, 0); at every shell the
    derivative jump is applied and (A, B) re-expanded with the Wronskian
    u v' - u' v = k. Outside the last shell w ~ sin(kr - l pi/2 + delta), so
    S = (A - iB) / (A + iB).

    Raises:
        InvalidEnergyError: k <= 0
        DegenerateBasisError: the numeric Wronskian is not finite or vanishes
    """
    _check_wavenumber(k)
    coeff_a, coeff_b = 1.0, 0.0
    for radius, alpha in zip(cfg.radii, cfg.alphas):
        u, v, up, vp = _riccati(ell, k, radius)
        wronskian = u * vp - up * v
        if not math.isfinite(wronskian) or abs(wronskian) < BASIS_TOLERANCE * k:
            raise DegenerateBasisError(
                f"Riccati-Bessel basis degenerate at r={radius}, k={k} (Wronskian {wronskian:.3e})"
            )
        state = RadialState(r=radius, w=coeff_a * u + coeff_b * v, wp=coeff_a * up + coeff_b * vp)
        state.wp += alpha * state.w
        coeff_a = (state.w * vp - state.wp * v) / k
        coeff_b = (u * state.wp - up * state.w) / k

    return complex(coeff_a, -coeff_b) / complex(coeff_a, coeff_b)


def _numerov_f(ell: int, k: float, r: np.ndarray) -> np.ndarray:
    return ell * (ell + 1) / r**2 - k * k


def _backward_derivative(ell: int, k: float, r: float, h: float, w: float, w_prev: float) -> float:
    """w'(r) to fourth order from w(r) and w(r - h), using w'' = F w."""
    lam = ell * (ell + 1)
    f = lam / r**2 - k * k
    f1 = -2.0 * lam / r**3
    f2 = 6.0 * lam / r**4
    numerator = w + h**2 / 2 * f * w - h**3 / 6 * f1 * w + h**4 / 24 * (f2 + f * f) * w - w_prev
    denominator = h + h**3 * f / 6 - h**4 * f1 / 12
    return numerator / denominator


def _taylor_step(ell: int, k: float, state: RadialState, h: float) -> float:
    """w(r + h) to fourth order from (w, w') at r."""
    lam = ell * (ell + 1)
    r, w, wp = state.r, state.w, state.wp
    f = lam / r**2 - k * k
    f1 = -2.0 * lam / r**3
    f2 = 6.0 * lam / r**4
    return (
        w
        + h * wp
        + h**2 / 2 * f * w
        + h**3 / 6 * (f1 * w + f * wp)
        + h**4 / 24 * (f2 * w + 2 * f1 * wp + f * f * w)
    )


def _numerov_segment(ell: int, k: float, grid: np.ndarray, w0: float, w1: float) -> np.ndarray:
    """Numerov recursion w'' = F w on a uniform grid, given the first two values."""
    h = grid[1] - grid[0]
    c = h * h / 12.0
    g = 1.0 - c * _numerov_f(ell, k, grid)
    w = np.empty(len(grid))
    w[0], w[1] = w0, w1
    for n in range(1, len(grid) - 1):
        # 1 + 5cF = 6 - 5(1 - cF)
        w[n + 1] = (2.0 * w[n] * (6.0 - 5.0 * g[n]) - w[n - 1] * g[n - 1]) / g[n + 1]
        if abs(w[n + 1]) > _RESCALE_LIMIT:
            w[: n + 2] /= _RESCALE_LIMIT
    return w


def default_r_max(cfg: ShellConfig, k: float) -> float:
    if cfg.n_shells == 0:
        return math.pi / k + 1.0
    return 2.5 * cfg.outer_radius + math.pi / k


def numerov_phase_shift(
    cfg: ShellConfig,
    ell: int,
    k: float,
    r_max: Optional[float] = None,
    steps: Optional[int] = None,
) -> float:
    """
    Phase shift modulo pi from direct integration of w'' = (l(l+1)/r^2 - k^2) w.

    The radial range [r0, R_1, ..., R_N, r_max] is split at the shells and
    each piece gets a uniform grid close to the nominal step r_max/steps, so
    shells sit exactly on nodes. At a shell the derivative is recovered from
    the last two nodes, the jump applied, and the next piece started with a
    Taylor step; both are fourth order. Beyond the last shell w is fitted to
    A kr j_l + B kr y_l at two nodes.

    Raises:
        InvalidGridError: r_max <= 2 R_N or steps < 10^4
        GridCollisionError: two consecutive radii closer than one nominal step
    """
    _check_wavenumber(k)
    r_max = default_r_max(cfg, k) if r_max is None else float(r_max)
    steps = settings.numerov_steps if steps is None else int(steps)
    if r_max <= 2.0 * cfg.outer_radius:
        raise InvalidGridError(f"r_max = {r_max} must exceed twice the outer radius {cfg.outer_radius}")
    if steps < MIN_NUMEROV_STEPS:
        raise InvalidGridError(f"Numerov needs at least {MIN_NUMEROV_STEPS} steps, got {steps}")

    h_nominal = r_max / steps
    first = cfg.radii[0] if cfg.n_shells else 1.0 / k
    r0 = min(first, 1.0 / k) * 1e-3
    breakpoints = [r0, *cfg.radii, r_max]
    grids: List[np.ndarray] = []
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi - lo < h_nominal:
            raise GridCollisionError(
                f"radii {lo} and {hi} are closer than the step {h_nominal:.3e}; increase steps"
            )
        grids.append(np.linspace(lo, hi, max(1, round((hi - lo) / h_nominal)) + 1))

    # Exact regular start, scaled so that w(r0) = 1.
    start = bessel_basis(ell, k * r0).j[ell].real * r0
    second = bessel_basis(ell, k * grids[0][1]).j[ell].real * grids[0][1]
    w = _numerov_segment(ell, k, grids[0], 1.0, second / start)

    for alpha, prev_grid, grid in zip(cfg.alphas, grids[:-1], grids[1:]):
        r = float(prev_grid[-1])
        wp = _backward_derivative(ell, k, r, r - float(prev_grid[-2]), w[-1], w[-2])
        state = RadialState(r=r, w=float(w[-1]), wp=wp + alpha * float(w[-1]))
        w1 = _taylor_step(ell, k, state, float(grid[1] - grid[0]))
        w = _numerov_segment(ell, k, grid, state.w, w1)

    delta = _fit_phase(ell, k, grids[-1], w)
    logger.debug("Numerov l=%d k=%g: %d steps, delta mod pi = %.12g", ell, k, steps, delta)
    return delta


def _fit_phase(ell: int, k: float, grid: np.ndarray, w: np.ndarray) -> float:
    """Fit w = A kr j_l + B kr y_l at two exterior nodes; delta = atan2(-B, A) mod pi."""
    h = float(grid[1] - grid[0])
    last = len(grid) - 1
    other = int(np.argmin(np.abs(grid - (grid[-1] - math.pi / (2 * k)))))
    if other == last or grid[other] <= grid[0] + h:
        other = last // 2

    rows, rhs = [], []
    for index in (last, other):
        u, v, _, _ = _riccati(ell, k, float(grid[index]))
        rows.append([u, v])
        rhs.append(w[index])
    coeff_a, coeff_b = np.linalg.solve(np.array(rows), np.array(rhs))
    return math.atan2(-coeff_b, coeff_a) % math.pi


def zero_energy_exterior(cfg: ShellConfig) -> Tuple[float, float]:
    """
    Exterior constants (d, e) of the zero-energy s-wave solution f = d + e/r.

    Starts from f = 1 inside the first shell and carries f = A + B/r across
    every shell: f is continuous and f' = -B/r^2 jumps by theta_j f(R_j)/R_j^2.
    """
    coeff_a, coeff_b = 1.0, 0.0
    for radius, theta in zip(cfg.radii, cfg.thetas):
        f = coeff_a + coeff_b / radius
        coeff_b -= theta * f
        coeff_a = f - coeff_b / radius
    return coeff_a, coeff_b


def zero_energy_report(cfg: ShellConfig) -> ZeroEnergyReport:
    """Exterior constants for any N, the scattering length -e/d when d != 0, and the N = 2 closed form."""
    d, e = zero_energy_exterior(cfg)
    # |A| grows at most by (1 + |theta_j|/R_j) per shell.
    scale = math.prod(1.0 + abs(t) / r for t, r in zip(cfg.thetas, cfg.radii))
    length = -e / d if abs(d) > ZERO_EXTERIOR_TOLERANCE * scale else None
    double_shell = zero_energy_solution(as_double_shell(cfg)) if cfg.n_shells == 2 else None
    return ZeroEnergyReport(d=d, e=e, scattering_length=length, double_shell=double_shell)


def _mod_pi_distance(x: float, y: float) -> float:
    return abs((x - y + math.pi / 2) % math.pi - math.pi / 2)


def compare_routes(
    cfg: ShellConfig,
    ell: int,
    k: float,
    numerov: bool = False,
    steps: Optional[int] = None,
    tolerance: Optional[float] = None,
    numerov_tolerance: Optional[float] = None,
) -> OracleComparison:
    """S_l(k) by determinant ratio, direct solve and transfer matrix, optionally the Numerov phase."""
    tolerance = settings.oracle_tolerance if tolerance is None else tolerance
    numerov_tolerance = settings.numerov_tolerance if numerov_tolerance is None else numerov_tolerance

    det_route = s_coefficient(cfg, ell, k)
    direct_route = s_coefficient_direct(cfg, ell, k)
    transfer = transfer_matrix_s(cfg, ell, k)
    deviations = {
        "det_ratio-direct": abs(det_route.s_value - direct_route.s_value),
        "det_ratio-transfer": abs(det_route.s_value - transfer),
        "direct-transfer": abs(direct_route.s_value - transfer),
    }
    passed = all(value <= tolerance for value in deviations.values())

    numerov_fields = {}
    if numerov:
        numerov_delta = numerov_phase_shift(cfg, ell, k, steps=steps)
        analytic = det_route.delta % math.pi
        deviation = _mod_pi_distance(numerov_delta, analytic)
        numerov_fields = {
            "numerov_delta": numerov_delta,
            "analytic_delta_mod_pi": analytic,
            "numerov_deviation": deviation,
            "numerov_tolerance": numerov_tolerance,
        }
        passed = passed and deviation <= numerov_tolerance

    if not passed:
        logger.warning("route comparison failed for l=%d, k=%g: %s", ell, k, deviations)
    return OracleComparison(
        ell=ell,
        k=k,
        s_det_ratio=det_route.s_value,
        s_direct=direct_route.s_value,
        s_transfer=transfer,
        deviations=deviations,
        tolerance=tolerance,
        passed=passed,
        **numerov_fields,
    )

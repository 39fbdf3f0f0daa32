"""
Reduced boundary matrices of the delta-shell model in one partial wave.

m_l(z)_ij = i*sqrt(z) * j_l(sqrt(z) r_<) * h1_l(sqrt(z) r_>), r_< / r_> the
smaller / larger of R_i, R_j, and K_l(z) = I + m_l(z) Theta with
Theta = diag(theta_j). Three evaluation points are supported:

- z = k^2 + i0 (sqrt z = k), the PLUS side
- z = k^2 - i0, the MINUS side, the entrywise conjugate of PLUS
- z = -kappa^2 (sqrt z = i*kappa), where the matrices are real
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import special

from shellscatter.core.errors import BranchResidualError, InvalidEnergyError
from shellscatter.schemas.scattering import BoundarySide
from shellscatter.schemas.shell_config import ShellConfig
from shellscatter.services.cmatrix import neumann_inverse
from shellscatter.services.specfun import Number, bessel_basis

logger = logging.getLogger(__name__)

BRANCH_RESIDUAL = 1e-10
# Above this kappa*R_N the negative-energy pairing uses exponentially scaled
# modified Bessel functions; unscaled j_l(i x) and h1_l(i x) overflow near x = 710.
SCALED_ARGUMENT = 100.0


@dataclass(frozen=True)
class BVector:
    """(j_l(k R_1), ..., j_l(k R_N))."""
    ell: int
    k: float
    values: NDArray[np.float64]


def _check_wavenumber(k: float, name: str = "k") -> None:
    if not math.isfinite(k) or k <= 0:
        raise InvalidEnergyError(f"{name} must be a positive finite number, got {k}")


def _radial_values(cfg: ShellConfig, ell: int, scale: Number) -> Tuple[NDArray, NDArray]:
    """j_l(scale*R_j) and h1_l(scale*R_j) for every shell."""
    j_vals = np.empty(cfg.n_shells, dtype=np.complex128)
    h_vals = np.empty(cfg.n_shells, dtype=np.complex128)
    for index, radius in enumerate(cfg.radii):
        table = bessel_basis(ell, scale * radius)
        j_vals[index] = table.j[ell]
        h_vals[index] = table.h1[ell]
    return j_vals, h_vals


def _green_pairing(cfg: ShellConfig, ell: int, root: Number) -> NDArray[np.complex128]:
    """i*root * j_l(root r_<) * h1_l(root r_>) over all shell pairs."""
    j_vals, h_vals = _radial_values(cfg, ell, root)
    # Radii are increasing, so the smaller index holds the smaller radius.
    index = np.arange(cfg.n_shells)
    inner = np.minimum.outer(index, index)
    outer = np.maximum.outer(index, index)
    return 1j * root * j_vals[inner] * h_vals[outer]


def m_matrix(
    cfg: ShellConfig,
    ell: int,
    k: float,
    side: BoundarySide = BoundarySide.PLUS,
    reevaluate: bool = False,
) -> NDArray[np.complex128]:
    """
    Boundary matrix m_l(k^2 +/- i0).

    The MINUS side is the conjugate of PLUS. With reevaluate=True it is
    instead computed from sqrt(k^2 - i0) = -k, which is kept as a diagnostic
    path.

    Raises:
        InvalidEnergyError: k <= 0
    """
    _check_wavenumber(k)
    if cfg.n_shells == 0:
        return np.zeros((0, 0), dtype=np.complex128)

    side = BoundarySide(side)
    if side == BoundarySide.PLUS:
        return _green_pairing(cfg, ell, k)
    if reevaluate:
        return _green_pairing(cfg, ell, -k)
    return np.conj(_green_pairing(cfg, ell, k))


def k_matrix(
    cfg: ShellConfig,
    ell: int,
    k: float,
    side: BoundarySide = BoundarySide.PLUS,
    reevaluate: bool = False,
) -> NDArray[np.complex128]:
    """K_l = I + m_l Theta; Theta scales columns."""
    m = m_matrix(cfg, ell, k, side, reevaluate)
    thetas = np.asarray(cfg.thetas, dtype=np.float64)
    return np.eye(cfg.n_shells, dtype=np.complex128) + m * thetas[None, :]


def _scaled_negative_pairing(cfg: ShellConfig, ell: int, kappa: float) -> NDArray[np.float64]:
    """
    m_l(-kappa^2) = (2 kappa / pi) i_l(kappa r_<) k_l(kappa r_>), built from
    I_v(x) e^-x and K_v(x) e^x so only exp(-kappa (r_> - r_<)) <= 1 remains.
    """
    radii = np.asarray(cfg.radii, dtype=np.float64)
    inner = np.minimum.outer(radii, radii)
    outer = np.maximum.outer(radii, radii)
    order = ell + 0.5
    return (
        special.ive(order, kappa * inner)
        * special.kve(order, kappa * outer)
        * np.exp(-kappa * (outer - inner))
        / np.sqrt(inner * outer)
    )


def m_matrix_negative(cfg: ShellConfig, ell: int, kappa: float) -> NDArray[np.float64]:
    """
    Boundary matrix m_l(-kappa^2), evaluated on the imaginary axis and
    returned as a real matrix. Far below threshold (kappa R_N > 100) it is
    built directly from scaled modified Bessel functions.

    Raises:
        InvalidEnergyError: kappa <= 0
        BranchResidualError: an entry has a relative imaginary part above 1e-10
    """
    _check_wavenumber(kappa, "kappa")
    if cfg.n_shells == 0:
        return np.zeros((0, 0), dtype=np.float64)
    if kappa * cfg.outer_radius > SCALED_ARGUMENT:
        return _scaled_negative_pairing(cfg, ell, kappa)

    m = _green_pairing(cfg, ell, 1j * kappa)
    residual = np.abs(m.imag)
    limit = BRANCH_RESIDUAL * np.abs(m)
    if np.any(residual > limit):
        worst = float(np.max(residual - limit))
        raise BranchResidualError(
            f"m_{ell}(-kappa^2) not real at kappa={kappa}: excess imaginary part {worst:.3e}"
        )
    return m.real.copy()


def k_matrix_negative(cfg: ShellConfig, ell: int, kappa: float) -> NDArray[np.float64]:
    m = m_matrix_negative(cfg, ell, kappa)
    thetas = np.asarray(cfg.thetas, dtype=np.float64)
    return np.eye(cfg.n_shells) + m * thetas[None, :]


def b_vector(cfg: ShellConfig, ell: int, k: float) -> BVector:
    _check_wavenumber(k)
    values = np.array(
        [bessel_basis(ell, k * radius).j[ell].real for radius in cfg.radii],
        dtype=np.float64,
    )
    return BVector(ell=ell, k=k, values=values)


def multiple_scattering_inverse(
    cfg: ShellConfig,
    ell: int,
    k: float,
    terms: int = 200,
) -> Optional[NDArray[np.complex128]]:
    """
    K_l(k^2 + i0)^-1 summed as the multiple-scattering series
    sum_p (-m_l Theta)^p.

    Returns None when ||m_l Theta||_inf >= 1 (weak-coupling condition fails).
    """
    m = m_matrix(cfg, ell, k, BoundarySide.PLUS)
    thetas = np.asarray(cfg.thetas, dtype=np.float64)
    inverse = neumann_inverse(m * thetas[None, :], max_terms=terms)
    if inverse is None:
        logger.debug("multiple-scattering series not convergent for l=%d, k=%g", ell, k)
    return inverse

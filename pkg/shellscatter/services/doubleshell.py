"""
Closed forms for two shells in the s-wave.

With s_j = sin(k R_j), c_j = cos(k R_j) the scaled boundary determinant is
k^2 R1^2 R2^2 det K_0(k^2 + i0) = A0(k) + i B0(k), so S_0 = (A0 - iB0)/(A0 + iB0).
At threshold A0 = C0 k^2 + O(k^4) and B0 = Gamma0 k^3 + O(k^5); when C0 = 0
the leading term of A0 is C2 k^4 instead and S_0 -> -1.
"""
import logging
import math
from typing import List, Optional, Tuple

from shellscatter.core.errors import (
    InvalidEnergyError,
    NearSingularBoundaryError,
    ThresholdCriticalError,
)
from shellscatter.schemas.shell_config import DoubleShellConfig, check_shells
from shellscatter.schemas.threshold import (
    CriticalCoupling,
    Regime,
    ThresholdReport,
    ZeroEnergySolution,
)

logger = logging.getLogger(__name__)

CLASSIFICATION_TOLERANCE = 1e-10
CRITICAL_DENOMINATOR = 1e-14
CROSS_CHECK_TOLERANCE = 1e-12
NEAR_SINGULAR = 1e-13


def _ab_terms(cfg: DoubleShellConfig, k: float) -> Tuple[List[float], List[float]]:
    r1, r2 = cfg.r1, cfg.r2
    t1, t2 = cfg.theta1, cfg.theta2
    s1, c1 = math.sin(k * r1), math.cos(k * r1)
    s2, c2 = math.sin(k * r2), math.cos(k * r2)
    a_terms = [
        r1**2 * r2**2 * k**2,
        r1**2 * k * c2 * s2 * t2,
        r2**2 * k * c1 * s1 * t1,
        t1 * t2 * (c1 * c2 * s1 * s2 - c2**2 * s1**2),
    ]
    b_terms = [
        r1**2 * k * s2**2 * t2,
        r2**2 * k * s1**2 * t1,
        t1 * t2 * s1 * s2 * (c1 * s2 - c2 * s1),
    ]
    return a_terms, b_terms


def ab_coefficients(cfg: DoubleShellConfig, k: float) -> Tuple[float, float]:
    """A0(k), B0(k): real and imaginary parts of k^2 R1^2 R2^2 det K_0(k^2 + i0)."""
    if not math.isfinite(k) or k <= 0:
        raise InvalidEnergyError(f"k must be a positive finite number, got {k}")
    a_terms, b_terms = _ab_terms(cfg, k)
    return math.fsum(a_terms), math.fsum(b_terms)


def _c0_terms(r1: float, r2: float, t1: float, t2: float) -> List[float]:
    return [
        r1**2 * r2**2,
        r1**2 * r2 * t2,
        r1 * r2**2 * t1,
        t1 * t2 * r1 * (r2 - r1),
    ]


def _gamma0(r1: float, r2: float, t1: float, t2: float) -> float:
    return r1**2 * r2**2 * (t1 + t2) + t1 * t2 * r1 * r2 * (r2 - r1)


def _c2_terms(r1: float, r2: float, t1: float, t2: float) -> List[float]:
    return [
        -2.0 / 3.0 * r1**2 * r2**3 * t2,
        -2.0 / 3.0 * r1**3 * r2**2 * t1,
        t1 * t2 * (-2.0 / 3.0 * (r1**3 * r2 + r1 * r2**3) + r1**2 * r2**2 + r1**4 / 3.0),
    ]


def threshold_constants(cfg: DoubleShellConfig) -> ThresholdReport:
    """
    C0, Gamma0, C2 and the threshold regime.

    Zero tests use 1e-10 times the sum of absolute term values of C0 (and of
    C2), which keeps the classification invariant under rescaling lengths.
    """
    r1, r2, t1, t2 = cfg.r1, cfg.r2, cfg.theta1, cfg.theta2
    c0_terms = _c0_terms(r1, r2, t1, t2)
    c2_terms = _c2_terms(r1, r2, t1, t2)
    c0 = math.fsum(c0_terms)
    c2 = math.fsum(c2_terms)
    gamma0 = _gamma0(r1, r2, t1, t2)
    tol_c0 = CLASSIFICATION_TOLERANCE * math.fsum(abs(t) for t in c0_terms)
    tol_c2 = CLASSIFICATION_TOLERANCE * math.fsum(abs(t) for t in c2_terms)

    if abs(c0) > tol_c0:
        return ThresholdReport(
            c0=c0, gamma0=gamma0, c2=c2, regime=Regime.REGULAR, scattering_length=gamma0 / c0
        )
    if abs(c2) > tol_c2:
        return ThresholdReport(
            c0=c0,
            gamma0=gamma0,
            c2=c2,
            regime=Regime.EXCEPTIONAL_NONDEGENERATE,
            exceptional_ratio=gamma0 / c2,
        )
    return ThresholdReport(c0=c0, gamma0=gamma0, c2=c2, regime=Regime.DEGENERATE)


def critical_theta2(r1: float, r2: float, theta1: float) -> Optional[float]:
    """
    The theta2 at which C0 vanishes for fixed R1 < R2 and theta1.

    Returns None when C0 does not depend on theta2 (denominator zero).
    """
    check_shells([r1, r2], [0.0, 0.0])
    numerator = r1**2 * r2**2 + r1 * r2**2 * theta1
    denominator = r1**2 * r2 + theta1 * r1 * (r2 - r1)
    scale = r1**2 * r2 + abs(theta1) * r1 * (r2 - r1)
    if abs(denominator) <= CRITICAL_DENOMINATOR * scale:
        return None
    return -numerator / denominator


def critical_coupling(r1: float, r2: float, theta1: float) -> CriticalCoupling:
    """critical_theta2 together with the threshold constants at that coupling."""
    theta2 = critical_theta2(r1, r2, theta1)
    if theta2 is None:
        return CriticalCoupling(r1=r1, r2=r2, theta1=theta1)
    cfg = DoubleShellConfig(radii=(r1, r2), alphas=(theta1 / r1**2, theta2 / r2**2))
    report = threshold_constants(cfg)
    return CriticalCoupling(
        r1=r1,
        r2=r2,
        theta1=theta1,
        theta2_critical=theta2,
        c2=report.c2,
        gamma0=report.gamma0,
        regime_at_critical=report.regime,
    )


def scattering_length(cfg: DoubleShellConfig) -> float:
    """
    a_s = Gamma0 / C0.

    Raises:
        ThresholdCriticalError: C0 vanishes (exceptional or degenerate threshold)
    """
    report = threshold_constants(cfg)
    if report.regime != Regime.REGULAR:
        raise ThresholdCriticalError(
            f"no finite scattering length: C0 = {report.c0:.3e}, regime {report.regime.value}"
        )
    return report.scattering_length


def zero_energy_solution(cfg: DoubleShellConfig, a: float = 1.0) -> ZeroEnergySolution:
    """Piecewise-harmonic zero-energy solution normalized by its interior constant a."""
    if a == 0:
        raise ValueError("interior constant a must be nonzero")
    r1, r2, t1, t2 = cfg.r1, cfg.r2, cfg.theta1, cfg.theta2
    c = -t1 * a
    b = a + t1 / r1 * a
    e = c - t2 * (b + c / r2)
    d = b + c / r2 - e / r2

    c0_terms = _c0_terms(r1, r2, t1, t2)
    expected_d = math.fsum(c0_terms) * a / (r1**2 * r2**2)
    scale = math.fsum(abs(t) for t in c0_terms) * abs(a) / (r1**2 * r2**2)
    if abs(d - expected_d) > CROSS_CHECK_TOLERANCE * scale:
        logger.warning("zero-energy exterior constant %r disagrees with C0 formula %r", d, expected_d)
    return ZeroEnergySolution(a=a, b=b, c=c, d=d, e=e)


def s0_closed_form(cfg: DoubleShellConfig, k: float) -> complex:
    """S_0(k) = (A0 - iB0) / (A0 + iB0)."""
    if not math.isfinite(k) or k <= 0:
        raise InvalidEnergyError(f"k must be a positive finite number, got {k}")
    a_terms, b_terms = _ab_terms(cfg, k)
    denominator = complex(math.fsum(a_terms), math.fsum(b_terms))
    scale = math.fsum(abs(t) for t in a_terms + b_terms)
    if abs(denominator) < NEAR_SINGULAR * scale:
        raise NearSingularBoundaryError(f"A0 + iB0 vanishes numerically at k={k}")
    return denominator.conjugate() / denominator


def delta0_arctan(cfg: DoubleShellConfig, k: float) -> float:
    """delta_0 = -arctan(B0/A0), the branch that vanishes at a regular threshold."""
    a0, b0 = ab_coefficients(cfg, k)
    if a0 == 0:
        return -math.copysign(math.pi / 2, b0)
    return -math.atan(b0 / a0)


def s0_low_energy(cfg: DoubleShellConfig, k: float) -> complex:
    """
    Leading low-energy form S_0 ~ 1 - 2i a_s k.

    Raises:
        ThresholdCriticalError: the threshold is not regular
    """
    if not math.isfinite(k) or k <= 0:
        raise InvalidEnergyError(f"k must be a positive finite number, got {k}")
    return 1.0 - 2j * scattering_length(cfg) * k

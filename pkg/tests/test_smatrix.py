import cmath
import logging
import math

import numpy as np
import pytest

from shellscatter.core.errors import GridTooCoarseError, InvalidEnergyError, InvalidGridError
from shellscatter.schemas.scattering import Method
from shellscatter.schemas.shell_config import validate
from shellscatter.services.smatrix import (
    extrapolated_scattering_length,
    phase_curve,
    s_coefficient,
    s_coefficient_direct,
    sweep_channel,
    total_cross_section,
)


def _single_shell_det(theta: float, radius: float, k: float) -> complex:
    """1 + theta sin(kR) exp(ikR) / (kR^2): det K_0 for one shell."""
    return 1.0 + theta * math.sin(k * radius) * cmath.exp(1j * k * radius) / (k * radius**2)


def _random_point(rng):
    return int(rng.integers(0, 9)), float(np.exp(rng.uniform(math.log(1e-2), math.log(20.0))))


def test_free_channel(free_config):
    """No interaction: S = 1, delta = 0."""
    for cfg in (free_config, validate([], [])):
        result = s_coefficient(cfg, 2, 1.5)
        assert result.s_value == 1.0
        assert result.delta == 0.0
        assert s_coefficient_direct(cfg, 2, 1.5).s_value == 1.0


def test_single_shell_value(single_shell):
    """S_0 = conj(D)/D with D = 1 + sin(1) exp(i)."""
    det = _single_shell_det(1.0, 1.0, 1.0)
    result = s_coefficient(single_shell, 0, 1.0)
    assert result.det_plus == pytest.approx(det, abs=1e-14)
    assert result.s_value == pytest.approx(det.conjugate() / det, abs=1e-14)
    assert result.s_value == pytest.approx(0.616890 - 0.787049j, abs=1e-5)
    assert result.method == Method.DET_RATIO


def test_direct_route_single_shell(single_shell):
    det = _single_shell_det(1.0, 1.0, 1.0)
    result = s_coefficient_direct(single_shell, 0, 1.0)
    assert result.s_value == pytest.approx(det.conjugate() / det, abs=1e-13)
    assert result.method == Method.DIRECT


def test_unitarity_and_phase(random_config, rng):
    """|S| = 1 and S = exp(2i delta)."""
    for _ in range(300):
        cfg = random_config()
        ell, k = _random_point(rng)
        result = s_coefficient(cfg, ell, k)
        assert abs(abs(result.s_value) - 1.0) <= 1e-12
        assert abs(result.s_value - cmath.exp(2j * result.delta)) <= 1e-10
        assert -math.pi < result.delta <= math.pi


def test_routes_agree(random_config, rng):
    """Determinant ratio and direct solve give the same S."""
    for _ in range(300):
        cfg = random_config()
        ell, k = _random_point(rng)
        det_route = s_coefficient(cfg, ell, k).s_value
        direct = s_coefficient_direct(cfg, ell, k).s_value
        assert abs(det_route - direct) <= 1e-10


def test_critical_config_tends_to_minus_one(critical_double):
    """At C0 = 0, |S_0 + 1| shrinks as k decreases."""
    distances = [abs(s_coefficient(critical_double, 0, k).s_value + 1.0) for k in (1e-2, 1e-3, 1e-4)]
    assert distances[0] > distances[1] > distances[2]
    assert distances[2] < 1e-3


def test_phase_curve_free(free_config):
    curve = phase_curve(free_config, 0, np.linspace(0.1, 3.0, 30))
    assert curve.deltas == [0.0] * 30


def test_phase_curve_low_energy_slope(single_shell):
    """delta_0 ~ -a_s k with a_s = theta R/(R + theta) = 1/2."""
    grid = np.geomspace(1e-3, 1e-2, 11)
    curve = phase_curve(single_shell, 0, grid)
    slopes = np.asarray(curve.deltas) / grid
    np.testing.assert_allclose(slopes, -0.5, rtol=0.01)


def test_phase_curve_critical_threshold(critical_double):
    """delta_0 approaches +/- pi/2 at a critical config."""
    curve = phase_curve(critical_double, 0, np.geomspace(1e-5, 1e-3, 5))
    assert abs(abs(curve.deltas[0]) - math.pi / 2) < 0.01


def test_phase_curve_continuity_through_large_change():
    """A strong shell moves delta by more than pi/2; the curve follows it continuously."""
    cfg = validate([1.0], [20.0])
    grid = np.geomspace(0.5, 2.5, 40)
    curve = phase_curve(cfg, 0, grid)
    steps = np.abs(np.diff(curve.deltas))
    assert np.all(steps < math.pi / 2)
    expected_end = -cmath.phase(_single_shell_det(20.0, 1.0, 2.5))
    assert curve.deltas[-1] == pytest.approx(expected_end, abs=1e-9)
    assert -math.pi / 2 < curve.deltas[0] <= math.pi / 2


def test_phase_curve_too_coarse():
    """One caller interval spanning more than pi/2 of phase is an error."""
    with pytest.raises(GridTooCoarseError):
        phase_curve(validate([1.0], [20.0]), 0, [0.5, 2.5])


@pytest.mark.parametrize("grid", [[], [1.0, 1.0], [2.0, 1.0], [-1.0, 1.0]])
def test_invalid_grid(single_shell, grid):
    with pytest.raises(InvalidGridError):
        phase_curve(single_shell, 0, grid)


def test_sweep_channel_threads_match_sequential(random_config):
    """Parallel sweeps return the same ordered results."""
    cfg = random_config(3)
    grid = np.linspace(0.2, 4.0, 25)
    sequential, curve_seq = sweep_channel(cfg, 1, grid, threads=1)
    parallel, curve_par = sweep_channel(cfg, 1, grid, threads=4)
    assert [r.s_value for r in sequential] == [r.s_value for r in parallel]
    assert curve_seq.deltas == curve_par.deltas


def test_nonpositive_k(single_shell):
    with pytest.raises(InvalidEnergyError):
        s_coefficient(single_shell, 0, 0.0)
    with pytest.raises(InvalidEnergyError):
        s_coefficient_direct(single_shell, 0, -2.0)


def test_cross_section_free(free_config):
    section = total_cross_section(free_config, 1.0, 5)
    assert section.sigma_total == 0.0
    assert section.partial_terms == [0.0] * 6


def test_cross_section_low_energy_limit(single_shell):
    """sigma -> 4 pi a_s^2 = pi for a_s = 1/2."""
    section = total_cross_section(single_shell, 0.01, 4)
    assert section.sigma_total == pytest.approx(math.pi, rel=0.02)
    assert section.sigma_total == pytest.approx(sum(section.partial_terms))


def test_cross_section_tail_is_negligible():
    """The l = l_max term is tiny once k R_N < l_max/2."""
    cfg = validate([1.0, 2.0], [1.5, -0.8])
    section = total_cross_section(cfg, 1.0, 8)
    assert section.partial_terms[-1] < 1e-8 * section.sigma_total


def test_cross_section_default_ell_max(caplog):
    """Default l_max is ceil(k R_N) + 8, clamped at 64 with a warning."""
    cfg = validate([1.0, 2.0], [1.0, 1.0])
    assert total_cross_section(cfg, 2.0).ell_max == 12
    with caplog.at_level(logging.WARNING):
        section = total_cross_section(validate([1.0], [1.0]), 100.0)
    assert section.ell_max == 64
    assert "clamped" in caplog.text


def test_extrapolated_scattering_length(single_shell, regular_double):
    """-delta_0/k extrapolated to k = 0 recovers a_s."""
    assert extrapolated_scattering_length(single_shell) == pytest.approx(0.5, rel=1e-8)
    assert extrapolated_scattering_length(regular_double) == pytest.approx(10.0 / 11.0, rel=1e-8)

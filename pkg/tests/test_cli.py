import csv
import io
import json

import numpy as np
import pytest

from shellscatter.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_scattering_length_json(config_file, capsys):
    """R = (1, 2), theta = (1, 1): C0 = 11, Gamma0 = 10, a_s = 10/11."""
    path = config_file([1.0, 2.0], [1.0, 0.25])
    assert main(["scattering-length", "--config", str(path)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["regime"] == "Regular"
    assert report["c0"] == pytest.approx(11.0)
    assert report["gamma0"] == pytest.approx(10.0)
    assert report["scattering_length"] == pytest.approx(10.0 / 11.0)


def test_phase_shift_free_config(config_file, capsys):
    """Inert shells give delta = 0 and S = 1 on every row."""
    path = config_file([1.0, 2.0], [0.0, 0.0])
    code = main(["phase-shift", "--config", str(path), "--ell", "1", "--kmin", "0.1", "--kmax", "2", "--points", "5"])
    assert code == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["k", "delta", "re_S", "im_S", "abs_det"]
    assert len(rows) == 6
    for row in rows[1:]:
        assert float(row[1]) == 0.0
        assert float(row[2]) == 1.0
        assert float(row[3]) == 0.0


def test_phase_shift_is_deterministic(config_file, capsys):
    path = config_file([0.5, 1.3, 2.0], [2.0, -1.5, 0.7])
    argv = ["phase-shift", "--config", str(path), "--ell", "0", "--kmin", "0.01", "--kmax", "5", "--points", "40", "--log"]
    main(argv)
    first = capsys.readouterr().out
    main(argv + ["--threads", "3"])
    second = capsys.readouterr().out
    assert first == second


def test_threshold_json(capsys):
    assert main(["threshold", "--R1", "1", "--R2", "2", "--theta1", "1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert list(payload) == ["R1", "R2", "theta1", "theta2_critical", "C2", "Gamma0", "regime_at_critical"]
    assert payload["theta2_critical"] == pytest.approx(-8.0 / 3.0)
    assert payload["Gamma0"] == pytest.approx(-12.0)
    assert payload["C2"] == pytest.approx(160.0 / 9.0)
    assert payload["regime_at_critical"] == "ExceptionalNondegenerate"


def test_threshold_without_critical_coupling(capsys):
    assert main(["threshold", "--R1", "1", "--R2", "2", "--theta1", "-2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["theta2_critical"] is None
    assert payload["regime_at_critical"] is None


def test_config_errors_exit_2(config_file, tmp_path, capsys):
    """Invalid configs, missing files, bad radii and bad scan arguments are usage errors."""
    bad = config_file([2.0, 1.0], [0.0, 0.0])
    assert main(["zero-energy", "--config", str(bad)]) == EXIT_USAGE
    assert "NonincreasingRadiiError" in capsys.readouterr().err

    assert main(["zero-energy", "--config", str(tmp_path / "nope.json")]) == EXIT_USAGE
    assert main(["threshold", "--R1", "2", "--R2", "1", "--theta1", "1"]) == EXIT_USAGE

    good = config_file([1.0], [-3.0], name="good.json")
    assert main(["bound-states", "--config", str(good), "--ell", "0", "--kappa-max", "-1"]) == EXIT_USAGE
    assert "InvalidEnergyError" in capsys.readouterr().err
    assert main(["bound-states", "--config", str(good), "--ell", "0", "--grid-points", "10"]) == EXIT_USAGE
    assert "InvalidGridError" in capsys.readouterr().err


def test_double_shell_commands_need_two_shells(config_file, capsys):
    path = config_file([1.0, 2.0, 3.0], [1.0, 1.0, 1.0])
    assert main(["scattering-length", "--config", str(path)]) == EXIT_USAGE
    assert "ShellCountError" in capsys.readouterr().err


def test_bad_sweep_exits_2(config_file, capsys):
    path = config_file([1.0], [1.0])
    code = main(["phase-shift", "--config", str(path), "--ell", "0", "--kmin", "2", "--kmax", "1", "--points", "5"])
    assert code == EXIT_USAGE
    assert "ValidationError" in capsys.readouterr().err


def test_numerical_failure_exits_1(config_file, capsys):
    """A grid that cannot resolve the phase is a numerical failure."""
    path = config_file([1.0], [20.0])
    code = main(["phase-shift", "--config", str(path), "--ell", "0", "--kmin", "0.5", "--kmax", "2.5", "--points", "2"])
    assert code == EXIT_NUMERICAL
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "GridTooCoarseError" in captured.err


def test_oracle_compare(config_file, capsys):
    path = config_file([1.0, 2.0], [1.0, -0.5])
    assert main(["oracle-compare", "--config", str(path), "--ell", "2", "--k", "1.3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert set(payload["s_det_ratio"]) == {"re", "im"}


@pytest.mark.parametrize("seed", range(10))
def test_oracle_compare_regression_set(config_file, capsys, seed):
    """All S-matrix routes agree on seeded random configs, so the command exits 0."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    radii = (0.1 + np.cumsum(rng.uniform(0.1, 0.9, n))).tolist()
    alphas = rng.uniform(-5.0, 5.0, n).tolist()
    path = config_file(radii, alphas)
    ell = str(int(rng.integers(0, 7)))
    k = repr(float(np.exp(rng.uniform(np.log(0.05), np.log(10.0)))))
    assert main(["oracle-compare", "--config", str(path), "--ell", ell, "--k", k]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert max(payload["deviations"].values()) <= 1e-8


def test_out_file(config_file, tmp_path, capsys):
    path = config_file([1.0], [1.0])
    target = tmp_path / "zero.json"
    assert main(["zero-energy", "--config", str(path), "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    report = json.loads(target.read_text(encoding="utf-8"))
    assert report["scattering_length"] == pytest.approx(0.5)
    assert report["double_shell"] is None


def test_cross_section_columns(config_file, capsys):
    """Columns: k, sigma_total, then one per channel up to l_max."""
    path = config_file([1.0, 2.0], [1.0, 0.5])
    args = ["cross-section", "--config", str(path), "--kmin", "0.5", "--kmax", "1.5", "--points", "3", "--lmax", "6"]
    assert main(args) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0][:3] == ["k", "sigma_total", "sigma_0"]
    assert len(rows[0]) == 9
    for row in rows[1:]:
        values = [float(cell) for cell in row]
        assert values[1] == pytest.approx(sum(values[2:]))


def test_bound_states(config_file, capsys):
    path = config_file([1.0], [-3.0])
    assert main(["bound-states", "--config", str(path), "--ell", "0"]) == EXIT_OK
    states = json.loads(capsys.readouterr().out)
    assert len(states) == 1
    assert states[0]["kappa"] == pytest.approx(1.41, abs=0.01)


def test_zero_energy_double_shell(config_file, capsys):
    path = config_file([1.0, 2.0], [1.0, 0.25])
    assert main(["zero-energy", "--config", str(path)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["d"] == pytest.approx(2.75)
    assert report["double_shell"]["e"] == pytest.approx(-2.5)


def test_usage_errors_raise_system_exit():
    """Missing required options are rejected by the parser."""
    with pytest.raises(SystemExit) as excinfo:
        main(["phase-shift", "--ell", "0"])
    assert excinfo.value.code == 2


def test_bound_states_large_radius(config_file, capsys):
    """A wide shell pushes the default scan to kappa R = 800 without failing."""
    path = config_file([40.0], [-0.1])
    assert main(["bound-states", "--config", str(path), "--ell", "0"]) == EXIT_OK
    states = json.loads(capsys.readouterr().out)
    assert [state["kappa"] for state in states] == [pytest.approx(2.0, rel=1e-10)]

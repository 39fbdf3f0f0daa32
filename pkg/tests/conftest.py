import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from shellscatter.main import app
from shellscatter.schemas.shell_config import DoubleShellConfig, ShellConfig, validate


@pytest.fixture
def single_shell() -> ShellConfig:
    """One shell, R = 1, alpha = 1."""
    return validate([1.0], [1.0])


@pytest.fixture
def free_config() -> ShellConfig:
    """Two inert shells."""
    return validate([1.0, 2.0], [0.0, 0.0])


@pytest.fixture
def regular_double() -> DoubleShellConfig:
    """R = (1, 2), theta = (1, 1): C0 = 11, Gamma0 = 10."""
    return DoubleShellConfig(radii=(1.0, 2.0), alphas=(1.0, 0.25))


@pytest.fixture
def critical_double() -> DoubleShellConfig:
    """R = (1, 2), theta = (1, -8/3): C0 = 0, Gamma0 = -12, C2 = 160/9."""
    return DoubleShellConfig(radii=(1.0, 2.0), alphas=(1.0, -2.0 / 3.0))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_config(rng):
    """Factory for random configs: N <= 5, R in (0.1, 5), alpha in (-5, 5)."""
    def make(n_shells=None, alpha_low=-5.0, alpha_high=5.0) -> ShellConfig:
        n = int(rng.integers(1, 6)) if n_shells is None else n_shells
        radii = 0.1 + np.cumsum(rng.uniform(0.1, 0.9, n))
        alphas = rng.uniform(alpha_low, alpha_high, n)
        return validate(radii.tolist(), alphas.tolist())
    return make


@pytest.fixture
def config_file(tmp_path):
    """Write a config JSON file and return its path."""
    def write(radii, alphas, name="shells.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"radii": radii, "alphas": alphas}), encoding="utf-8")
        return path
    return write


@pytest.fixture
def client():
    """HTTP test client."""
    with TestClient(app) as test_client:
        yield test_client

from pathlib import Path
from typing import List, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, FiniteFloat, ValidationError, model_validator

from shellscatter.core.errors import (
    ConfigError,
    LengthMismatchError,
    NonincreasingRadiiError,
    NonpositiveRadiusError,
    ShellCountError,
)


def check_shells(radii: Sequence[float], alphas: Sequence[float]) -> None:
    """Raise the first configuration violation found, in a fixed order."""
    if len(radii) != len(alphas):
        raise LengthMismatchError(
            f"radii has {len(radii)} entries but alphas has {len(alphas)}"
        )
    for index, radius in enumerate(radii):
        if radius <= 0:
            raise NonpositiveRadiusError(f"radius R_{index + 1} = {radius} must be positive")
    for index in range(len(radii) - 1):
        if radii[index + 1] <= radii[index]:
            raise NonincreasingRadiiError(
                f"radii must be strictly increasing: R_{index + 2} = {radii[index + 1]} "
                f"<= R_{index + 1} = {radii[index]}"
            )


class ShellConfigPayload(BaseModel):
    """Raw config as read from JSON, before the shell checks run."""
    radii: List[float]
    alphas: List[float]


class ShellConfig(BaseModel):
    """N concentric delta shells: radii R_1 < ... < R_N and strengths alpha_j."""
    model_config = ConfigDict(frozen=True)

    radii: Tuple[FiniteFloat, ...] = ()
    alphas: Tuple[FiniteFloat, ...] = ()

    @model_validator(mode='after')
    def validate_shells(self):
        check_shells(self.radii, self.alphas)
        return self

    @property
    def n_shells(self) -> int:
        return len(self.radii)

    @property
    def thetas(self) -> Tuple[float, ...]:
        """theta_j = alpha_j * R_j**2."""
        return tuple(alpha * radius * radius for alpha, radius in zip(self.alphas, self.radii))

    @property
    def outer_radius(self) -> float:
        return self.radii[-1] if self.radii else 0.0

    @property
    def is_free(self) -> bool:
        return all(alpha == 0 for alpha in self.alphas)


class DoubleShellConfig(ShellConfig):
    """Two shells, R_1 < R_2."""

    @model_validator(mode='after')
    def validate_shell_count(self):
        if self.n_shells != 2:
            raise ShellCountError(f"double-shell operation needs N = 2, got N = {self.n_shells}")
        return self

    @property
    def r1(self) -> float:
        return self.radii[0]

    @property
    def r2(self) -> float:
        return self.radii[1]

    @property
    def theta1(self) -> float:
        return self.thetas[0]

    @property
    def theta2(self) -> float:
        return self.thetas[1]


def validate(radii: Sequence[float], alphas: Sequence[float]) -> ShellConfig:
    """
    Build a ShellConfig, raising the named ConfigError subclass on bad input.

    Raises:
        LengthMismatchError: radii and alphas differ in length
        NonpositiveRadiusError: some R_j <= 0
        NonincreasingRadiiError: some R_{j+1} <= R_j
        ConfigError: non-finite values
    """
    radii = [float(r) for r in radii]
    alphas = [float(a) for a in alphas]
    check_shells(radii, alphas)
    try:
        return ShellConfig(radii=tuple(radii), alphas=tuple(alphas))
    except ValidationError as e:
        raise ConfigError(f"invalid shell config: {e.errors()[0]['msg']}") from e


def as_double_shell(cfg: ShellConfig) -> DoubleShellConfig:
    """Narrow a config to the N = 2 type used by the closed forms."""
    if isinstance(cfg, DoubleShellConfig):
        return cfg
    if cfg.n_shells != 2:
        raise ShellCountError(f"double-shell operation needs N = 2, got N = {cfg.n_shells}")
    return DoubleShellConfig(radii=cfg.radii, alphas=cfg.alphas)


def parse_config(text: Union[str, bytes]) -> ShellConfig:
    """Parse the canonical JSON form {"radii": [...], "alphas": [...]}."""
    try:
        payload = ShellConfigPayload.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(f"malformed shell config: {e.errors()[0]['msg']}") from e
    return validate(payload.radii, payload.alphas)


def load_config(path: Union[str, Path]) -> ShellConfig:
    """Read and validate a config file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror}") from e
    return parse_config(text)

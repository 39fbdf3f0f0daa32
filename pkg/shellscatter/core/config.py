from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_prefix="SHELLSCATTER_", case_sensitive=False)

    log_level: str = "INFO"

    # Sweep parallelism (1 = sequential)
    threads: int = 1

    # Oracle settings
    numerov_steps: int = 100_000
    oracle_tolerance: float = 1e-8
    numerov_tolerance: float = 1e-6

    # Bound-state scan
    kappa_max: float = 20.0
    kappa_grid_points: int = 400

    # Cross sections: default ell_max = ceil(k * R_N) + margin
    cross_section_ell_margin: int = 8


settings = Settings()

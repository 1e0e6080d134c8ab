"""
Application settings module
환경 변수와 허용 오차 설정을 중앙에서 관리합니다.
"""
import copy
from pathlib import Path
from typing import Optional
from functools import lru_cache

import yaml
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables and config files"""

    # Application
    APP_NAME: str = "QHam Implosion Engine"
    APP_VERSION: str = "0.1.0"
    DEBUG: bool = False

    # Server
    HOST: str = "0.0.0.0"
    PORT: int = 8001

    # Numerics
    QHAM_TOL: Optional[float] = None  # 모든 identity 허용 오차를 덮어씀
    QHAM_SAMPLES: int = 100
    QHAM_SEED: int = 0
    QHAM_MAX_WORKERS: int = 4

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "./logs"
    LOG_TO_FILE: bool = True

    # Environment
    ENV: str = "development"

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance

    Returns:
        Settings: Application settings
    """
    return Settings()


DEFAULT_TOLERANCES = {
    "tolerances": {
        "unitary": 1.0e-10,
        "anti_hermitian": 1.0e-12,
        "antisymmetry": 1.0e-12,
        "equivariance": 1.0e-12,
        "varpi_dual": 1.0e-10,
        "axiom_i": 1.0e-5,
        "axiom_iii": 1.0e-8,
        "degeneracy_floor": 1.0e-8,
        "disc_origin": 1.0e-14,
        "disc_regularity": 1.0e-6,
        "disc_exponentiation": 1.0e-10,
        "glue_form": 1.0e-6,
        "glue_moment": 1.0e-10,
        "involution": 1.0e-12,
        "equator": 1.0e-12,
        "cotangent": 1.0e-8,
        "sphere_reduction": 1.0e-8,
        "universal": 1.0e-8,
        "sampler": 1.0e-12,
        "chi_calibration": 1.0e-3,
    },
    "finite_differences": {
        "base_step": 1.0e-3,
        "reject_factor": 10.0,
        "max_resamples": 20,
    },
    "numerics": {
        "series_cutoff": 1.0e-4,
        "chi_normalization": 0.5,
        "region_margin": 0.1,
        "disc_radius_fraction": 0.9,
        "glue_band": [0.1, 0.9],
        "ad_invertible_floor": 1.0e-2,
        "nondegeneracy_floor": 1.0e-7,
        "rank_threshold": 1.0e-8,
        "axiom_i_samples": 6,
        "axiom_ii_samples": 20,
    },
}


def load_tolerance_config() -> dict:
    """
    Load tolerance configuration from YAML file

    Returns:
        dict: Tolerances, finite-difference knobs and numeric guards
    """
    config_path = Path(__file__).parent / "tolerances.yml"

    if not config_path.exists():
        # Return default config if file doesn't exist
        return copy.deepcopy(DEFAULT_TOLERANCES)

    with open(config_path, "r", encoding="utf-8") as f:
        loaded = yaml.safe_load(f) or {}

    merged = copy.deepcopy(DEFAULT_TOLERANCES)
    for section, values in loaded.items():
        merged.setdefault(section, {}).update(values or {})
    return merged


def resolve_tolerance(name: str, override: Optional[float] = None) -> float:
    """
    Resolve the tolerance for one identity

    Precedence: explicit override (``--tol``) > ``QHAM_TOL`` > YAML value.

    Args:
        name: Identity key in the ``tolerances`` section
        override: Value passed on the command line, if any

    Returns:
        float: Tolerance to compare the identity's max residual against
    """
    if override is not None:
        return float(override)
    env_override = get_settings().QHAM_TOL
    if env_override is not None:
        return float(env_override)
    tolerances = load_tolerance_config()["tolerances"]
    if name not in tolerances:
        raise ValueError(f"Unknown tolerance '{name}'. Known: {sorted(tolerances)}")
    return float(tolerances[name])


@lru_cache()
def numeric_setting(section: str, name: str):
    """
    Cached lookup of one value of the tolerance YAML

    허용 오차 override(--tol, QHAM_TOL)와 무관한 수치 가드 값을 읽을 때 사용합니다.
    """
    config = load_tolerance_config()
    if name not in config.get(section, {}):
        raise ValueError(f"Unknown setting '{section}.{name}'")
    return config[section][name]

from functools import lru_cache
from pathlib import Path
from typing import Type, TypeVar

from dotenv import dotenv_values
from pydantic_settings import BaseSettings as PydanticBaseSettings


TypeSetting = TypeVar("TypeSetting", bound=PydanticBaseSettings)


class LabSettings(PydanticBaseSettings):
    # Largest number of samples a single grid may hold
    max_grid_samples: int = 2**26
    # Terms per output point allowed for the direct-summation oracle
    direct_term_budget: int = 2**22

    grid_m: int = 256
    half_width: float = 16.0
    seed: int = 1

    # Grid on which symbols are treated as functions for their Sobolev norms
    symbol_grid_m: int = 256
    symbol_half_width: float = 2.5

    log_level: str = "WARNING"
    log_json: bool = False

    model_config = {
        "extra": "ignore",
        "env_prefix": "HLAB_",
    }


def read_config_file(path: str | Path) -> dict[str, str]:
    """Key-value config file (dotenv syntax), keys normalised to snake case."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    values = dotenv_values(path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in values.items()
        if value is not None
    }


@lru_cache
def get_setting(setting_class: Type[TypeSetting]) -> TypeSetting:
    """helper to cache the PydanticSettings classes"""
    return setting_class()

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from hormander_lab.src.models.sharpness import SharpnessParams
from hormander_lab.src.utils.errors import ParameterError
from hormander_lab.src.utils.settings import LabSettings

CASE1 = SharpnessParams(m=2, n=1, s=1.2, r=1.5, q=2.0, t=1.9, gamma=1.0)
CASE2 = SharpnessParams(m=2, n=1, s=1.2, r=5.0 / 3.0, q=2.0, t=2.0, gamma=1.5)
CONTROL = SharpnessParams(m=2, n=1, s=1.2, r=1.5, q=2.0, t=2.3, gamma=1.0)

SWEEP_N = (16, 32, 64, 128, 256, 512, 1024)


class RunConfig(BaseModel):
    """Every knob a scenario reads, after defaults, config file, preset and flags are merged."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    grid_m: int = Field(256, ge=16, description="Points per axis of the fine grid")
    half_width: float = Field(16.0, gt=0, description="Half-width L of the periodic cube")
    seed: int = Field(1, ge=0, lt=2**64)
    symbol_grid_m: int = Field(256, ge=16, description="Points per axis of the symbol grid")
    instances: int | None = Field(
        default=None, ge=1, description="Random instances per property; scenario default if unset"
    )
    sharpness: SharpnessParams = CASE1
    n_values: tuple[int, ...] = SWEEP_N
    phase_diagrams: bool = True
    dump_dir: Path | None = None

    @field_validator("grid_m", "symbol_grid_m")
    @classmethod
    def _halvable(cls, value: int) -> int:
        if value % 4:
            raise ValueError(f"grid sizes must be multiples of 4, got {value}")
        return value

    def count(self, default: int) -> int:
        return self.instances or default

    def echo(self) -> dict[str, Any]:
        payload = self.model_dump(mode="json", exclude={"dump_dir"})
        payload["regime"] = self.sharpness.regime
        return payload


PRESETS: dict[str, dict[str, Any]] = {
    "desk": {},
    "acceptance": {"grid_m": 512},
    "case1": {"sharpness": CASE1, "symbol_grid_m": 1024},
    "case2": {"sharpness": CASE2, "symbol_grid_m": 1024},
    "control": {"sharpness": CONTROL, "symbol_grid_m": 1024},
}


def resolve_config(
    settings: LabSettings,
    file_values: dict[str, str] | None = None,
    preset: str | None = None,
    flags: dict[str, Any] | None = None,
) -> RunConfig:
    """Merge defaults < environment < config file < preset < flags and validate the result.

    Args:
        settings: LabSettings, which already carry the defaults and the environment
        file_values: keys read from the optional config file
        preset: name of a preset in PRESETS
        flags: command-line values; None entries are ignored

    Returns:
        the validated RunConfig
    """
    merged: dict[str, Any] = {
        "grid_m": settings.grid_m,
        "half_width": settings.half_width,
        "seed": settings.seed,
        "symbol_grid_m": settings.symbol_grid_m,
    }
    fields = set(RunConfig.model_fields)
    for key, value in (file_values or {}).items():
        if key in fields:
            merged[key] = value
    if preset is not None:
        if preset not in PRESETS:
            raise ParameterError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        merged.update(PRESETS[preset])
    for key, value in (flags or {}).items():
        if value is not None:
            merged[key] = value
    return RunConfig.model_validate(merged)

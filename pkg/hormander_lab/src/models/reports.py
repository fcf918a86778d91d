from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ScenarioName = Literal[
    "verify-core",
    "verify-lorentz",
    "verify-lemmas",
    "decompose-check",
    "theorem1-ratio",
    "lemma31-check",
    "transpose-check",
    "sharpness-sweep",
    "region-check",
]

Verdict = Literal["pass", "fail", "report"]
Comparison = Literal["le", "ge", "lt", "gt", "eq", "report"]


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: ScenarioName
    params: dict[str, Any] = Field(default_factory=dict, description="Resolved scenario parameters")
    seed: int = Field(1, ge=0, lt=2**64, description="Seed of every named random stream")


class Metric(BaseModel):
    """One measured quantity; asserted metrics carry their tolerance and comparison."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    label: str
    value: float | bool | None
    tolerance: float | None = Field(default=None, description="Bound the value is compared with")
    comparison: Comparison = "report"
    verdict: Verdict = "report"

    @model_validator(mode="after")
    def _asserted_has_tolerance(self):
        if self.verdict != "report" and self.comparison != "eq" and self.tolerance is None:
            raise ValueError(f"asserted metric {self.label!r} carries no tolerance")
        return self


class ExperimentReport(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    scenario: Scenario
    metrics: list[Metric] = Field(default_factory=list)
    environment: dict[str, Any] = Field(
        default_factory=dict, description="Grid, window and parameter echo"
    )
    provenance: dict[str, str] = Field(
        default_factory=dict, description="Versions of the package and its numerical stack"
    )

    @property
    def passed(self) -> bool:
        return all(metric.verdict != "fail" for metric in self.metrics)

    @property
    def verdict(self) -> Verdict:
        return "pass" if self.passed else "fail"


class ExponentRegion(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1)
    n: int = Field(1, ge=1)
    s: float = Field(..., gt=0)
    point: tuple[float, ...] = Field(..., description="(1/p_1, ..., 1/p_m)")

    @field_validator("point")
    @classmethod
    def _nonnegative(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if any(c < 0 for c in value):
            raise ValueError("exponent coordinates must be nonnegative")
        return value

    @model_validator(mode="after")
    def _arity(self):
        if len(self.point) != self.m:
            raise ValueError(f"point has {len(self.point)} coordinates, expected m = {self.m}")
        return self


class RegionMembership(BaseModel):
    model_config = ConfigDict(frozen=True)

    inside_Q: bool
    inside_P: bool
    inside_hull: bool
    # strict interior of the hull, with the LP depth that certifies it
    hull_interior: bool = False
    hull_margin: float = 0.0

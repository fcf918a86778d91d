import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Regime = Literal["case1", "case2", "control"]


class SharpnessParams(BaseModel):
    """Exponents of one sharpness run; the regime is derived and must be one of the three."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    s: float = Field(..., gt=0)
    r: float = Field(..., gt=0)
    q: float = Field(..., gt=0)
    t: float = Field(..., gt=0)
    gamma: float = Field(..., gt=0)
    p_js: tuple[float, ...] = (4.0, 4.0)

    @property
    def dim(self) -> int:
        return self.m * self.n

    @property
    def p(self) -> float:
        return 1.0 / sum(1.0 / pj for pj in self.p_js)

    @property
    def regime(self) -> Regime | None:
        d = self.dim
        critical = d / self.s
        if self.t > d:
            return "control"
        if self.r < critical and d - (d / self.r - self.s) < self.t < d:
            return "case1"
        if (
            math.isclose(self.r, critical, rel_tol=1e-12)
            and self.q > 1
            and math.isclose(self.t, d, rel_tol=1e-12)
            and 2.0 / self.q < self.gamma <= 2.0
        ):
            return "case2"
        return None

    @model_validator(mode="after")
    def _regime(self):
        if not self.s < self.dim:
            raise ValueError(f"need 0 < s < mn = {self.dim}, got s = {self.s}")
        if len(self.p_js) != self.m:
            raise ValueError(f"need {self.m} exponents p_j, got {len(self.p_js)}")
        if any(pj <= 0 for pj in self.p_js):
            raise ValueError("exponents p_j must be positive")
        if self.regime is None:
            raise ValueError(
                f"(r, q, t, gamma) = ({self.r}, {self.q}, {self.t}, {self.gamma}) "
                "is in none of the sharpness regimes"
            )
        return self


class SweepCurve(BaseModel):
    model_config = ConfigDict(frozen=True)

    N_values: tuple[int, ...]
    upper: tuple[float, ...]
    lower: tuple[float, ...]

    @field_validator("N_values")
    @classmethod
    def _ascending(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value:
            raise ValueError("N_values must not be empty")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("N_values must be strictly ascending")
        return value

    @model_validator(mode="after")
    def _monotone(self):
        if not len(self.N_values) == len(self.upper) == len(self.lower):
            raise ValueError("N_values, upper and lower must have equal length")
        if any(b < a for a, b in zip(self.lower, self.lower[1:])):
            raise ValueError("lower-bound curve must be nondecreasing in N")
        return self

    @property
    def upper_band_ratio(self) -> float:
        lo = min(self.upper)
        return math.inf if lo == 0 else max(self.upper) / lo


class SweepVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    regime: Regime
    upper_band_ratio: float
    lower_fit_exponent: float
    passed: bool = Field(..., serialization_alias="pass")


class KernelAsymptotics(BaseModel):
    """Decay constant for |xi| > 1 and the two-sided ratio band at small |xi|."""

    model_config = ConfigDict(frozen=True)

    decay_constant: float
    decay_constant_coarse: float
    ratio_lo: float
    ratio_hi: float

    @property
    def band(self) -> float:
        return self.ratio_hi / self.ratio_lo


class PhasePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    gamma: float
    r: float
    fitted_power: float
    fitted_log: float
    finite: bool
    expected_finite: bool

    @property
    def agrees(self) -> bool:
        return self.finite == self.expected_finite

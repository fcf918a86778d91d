import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from hormander_lab.src.utils.summation import stable_sum


class LorentzIndex(BaseModel):
    """Exponent pair (p, q) of L^{p,q}; ``math.inf`` allowed for either."""

    model_config = ConfigDict(frozen=True)

    p: float = Field(..., gt=0)
    q: float = Field(..., gt=0)

    @property
    def is_weak(self) -> bool:
        return math.isinf(self.q)


class SobolevIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: float = Field(..., ge=0)
    p: float = Field(..., gt=0)
    q: float = Field(..., gt=0)

    @property
    def lorentz(self) -> LorentzIndex:
        return LorentzIndex(p=self.p, q=self.q)


class MaximalConfig(BaseModel):
    """Power r of M_r and the half-widths of the cubes searched."""

    model_config = ConfigDict(frozen=True)

    r: float = Field(1.0, gt=0)
    radius_set: tuple[float, ...]

    @field_validator("radius_set")
    @classmethod
    def _ascending(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value:
            raise ValueError("radius_set must not be empty")
        if any(r <= 0 for r in value):
            raise ValueError("radii must be positive")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("radius_set must be strictly ascending")
        return value


class Rearrangement(BaseModel):
    """Decreasing rearrangement f* = levels[i] on [breakpoints[i], breakpoints[i+1])."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    breakpoints: np.ndarray
    levels: np.ndarray
    total_measure: float = Field(..., gt=0)

    @model_validator(mode="after")
    def _check(self):
        t, v = self.breakpoints, self.levels
        if t.ndim != 1 or v.ndim != 1 or len(t) != len(v) + 1:
            raise ValueError("need one more breakpoint than levels")
        if t[0] != 0.0:
            raise ValueError("first breakpoint must be 0")
        if np.any(np.diff(t) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if np.any(v <= 0) or np.any(np.diff(v) >= 0):
            raise ValueError("levels must be positive and strictly decreasing")
        if t[-1] > self.total_measure * (1 + 1e-12):
            raise ValueError("support measure exceeds the grid volume")
        t.setflags(write=False)
        v.setflags(write=False)
        return self

    @property
    def steps(self) -> int:
        return len(self.levels)

    def distribution(self, s: float) -> float:
        """d_{f*}(s): measure where f* exceeds s."""
        above = np.nonzero(self.levels > s)[0]
        if len(above) == 0:
            return 0.0
        return float(self.breakpoints[above[-1] + 1])

    def integral(self) -> float:
        return float(stable_sum(self.levels * np.diff(self.breakpoints)))


class InequalityCheck(BaseModel):
    """Both sides of an inequality lhs <= rhs as computed."""

    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        if self.rhs == 0.0:
            return 0.0 if self.lhs == 0.0 else math.inf
        return self.lhs / self.rhs

    def holds(self, slack: float = 1e-9) -> bool:
        return self.lhs <= self.rhs * (1.0 + slack)

from collections.abc import Callable
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hormander_lab.src.models.fields import Grid, SampledField
from hormander_lab.src.utils.errors import ParameterError

# A symbol evaluator takes the m*n frequency coordinates (broadcastable
# arrays, slot j owning coordinates j*n .. j*n + n - 1) and returns values.
SymbolFn = Callable[[tuple[np.ndarray, ...]], np.ndarray]


def total_radius(xi: tuple[np.ndarray, ...]) -> np.ndarray:
    return np.sqrt(sum(np.asarray(c) ** 2 for c in xi))


def slot_radius(xi: tuple[np.ndarray, ...], j: int, n: int) -> np.ndarray:
    """|xi_j| for the 0-based slot j."""
    return np.sqrt(sum(np.asarray(c) ** 2 for c in xi[j * n : (j + 1) * n]))


class MultiplierSymbol(BaseModel):
    """Samples of sigma on the frequency points of an (m n)-dim grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    grid: Grid
    values: np.ndarray | None = None
    closed_form: SymbolFn | None = Field(default=None, exclude=True, repr=False)
    support_hint: tuple[float, float] | None = None
    interpolation_error: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def _check(self):
        if self.m * self.n != self.grid.dim:
            raise ValueError(f"m*n = {self.m * self.n} does not match grid dim {self.grid.dim}")
        if self.values is None:
            if self.closed_form is None:
                raise ValueError("a symbol needs sampled values or a closed form")
            return self
        values = np.asarray(self.values)
        if values.shape != self.grid.shape:
            raise ValueError(f"values shape {values.shape} != grid shape {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("symbol values must be finite")
        if self.support_hint is not None:
            lo, hi = self.support_hint
            if not 0 <= lo < hi:
                raise ValueError(f"bad support hint {self.support_hint}")
            radius = self.grid.radius("frequency")
            outside = (radius < lo) | (radius > hi)
            scale = max(1.0, float(np.abs(values).max(initial=0.0)))
            if np.any(np.abs(values[outside]) > 1e-12 * scale):
                raise ValueError("symbol does not vanish outside its support hint")
        values.setflags(write=False)
        return self

    def evaluate(self, xi: tuple[np.ndarray, ...]) -> np.ndarray:
        if self.closed_form is None:
            raise ParameterError("symbol has no closed form")
        return np.asarray(self.closed_form(xi))

    def samples(self) -> np.ndarray:
        if self.values is None:
            raise ParameterError("symbol carries no sampled values")
        return self.values

    def max_abs(self) -> float:
        return float(np.abs(self.samples()).max(initial=0.0))

    def as_frequency_field(self) -> SampledField:
        return SampledField(grid=self.grid, values=self.samples(), space="frequency")


class OperatorApplication(BaseModel):
    model_config = ConfigDict(frozen=True)

    output: SampledField
    method: Literal["spectral", "direct", "sparse"]
    # disagreement with the direct oracle when a check was requested
    residual: float = Field(0.0, ge=0)
    checked: bool = False
    tolerance: float | None = None

    @model_validator(mode="after")
    def _within_tolerance(self):
        if self.checked and self.tolerance is not None and self.residual > self.tolerance:
            raise ValueError(
                f"spectral result disagrees with the direct oracle: {self.residual:.3e}"
            )
        return self


class SymbolDecomposition(BaseModel):
    """sigma = parts[0] + ... + parts[m-1], parts[0] = low + high."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    parts: tuple[np.ndarray, ...]
    low: np.ndarray
    high: np.ndarray
    k_window: tuple[int, int]

    def reconstruction(self) -> np.ndarray:
        return sum(self.parts)


class DominationReport(BaseModel):
    """Both sides of the pointwise bound at every sample point."""

    model_config = ConfigDict(frozen=True)

    lhs: tuple[float, ...]
    rhs: tuple[float, ...]
    symbol_norm: float = Field(..., ge=0)

    @property
    def max_ratio(self) -> float:
        best = 0.0
        for a, b in zip(self.lhs, self.rhs):
            if a == 0:
                continue
            best = max(best, a / b if b > 0 else float("inf"))
        return best


class MapGeometry(BaseModel):
    """Singular values of the frequency map of a transpose and the annulus inclusion they imply."""

    model_config = ConfigDict(frozen=True)

    singular_min: float
    singular_max: float
    image_lo: float
    image_hi: float
    plateau_lo: float
    plateau_hi: float

    @property
    def included(self) -> bool:
        return self.plateau_lo <= self.image_lo and self.image_hi <= self.plateau_hi

from typing import Literal

import numpy as np
from cachetools import LRUCache, cached
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


Space = Literal["physical", "frequency"]


class Grid(BaseModel):
    """Periodic cube [-L, L)^d sampled with M points per axis.

    Sample i sits at x_i = (i - M/2) h and frequency bin k at
    xi_k = (k - M/2) / (2L), so index M/2 is the origin on both sides.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    dim: int = Field(..., ge=1, le=4)
    half_width: float = Field(..., gt=0)
    points_per_axis: int = Field(..., ge=8)

    @field_validator("points_per_axis")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"points_per_axis must be even, got {value}")
        return value

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points_per_axis

    @property
    def freq_spacing(self) -> float:
        return 1.0 / (2.0 * self.half_width)

    @property
    def nyquist(self) -> float:
        """Largest resolvable frequency magnitude per axis."""
        return self.points_per_axis * self.freq_spacing / 2.0

    @property
    def samples(self) -> int:
        return self.points_per_axis**self.dim

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def cell_measure(self) -> float:
        return self.spacing**self.dim

    @property
    def freq_cell_measure(self) -> float:
        return self.freq_spacing**self.dim

    @property
    def volume(self) -> float:
        return (2.0 * self.half_width) ** self.dim

    def axis(self) -> np.ndarray:
        return _axis(self)

    def freq_axis(self) -> np.ndarray:
        return _freq_axis(self)

    def mesh(self, space: Space = "physical") -> tuple[np.ndarray, ...]:
        """Open (broadcastable) coordinate arrays, one per axis."""
        ax = self.axis() if space == "physical" else self.freq_axis()
        out = []
        for d in range(self.dim):
            shape = [1] * self.dim
            shape[d] = self.points_per_axis
            out.append(ax.reshape(shape))
        return tuple(out)

    def radius(self, space: Space = "physical") -> np.ndarray:
        return _radius(self, space)

    def points(self, space: Space = "physical") -> np.ndarray:
        """All grid points as an (M^d, d) array in row-major order."""
        full = np.meshgrid(*[m.ravel() for m in self.mesh(space)], indexing="ij")
        return np.stack([c.ravel() for c in full], axis=-1)

    def center_index(self) -> int:
        return self.points_per_axis // 2


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@cached(LRUCache(maxsize=64))
def _axis(grid: Grid) -> np.ndarray:
    idx = np.arange(grid.points_per_axis) - grid.points_per_axis // 2
    return _readonly(idx * grid.spacing)


@cached(LRUCache(maxsize=64))
def _freq_axis(grid: Grid) -> np.ndarray:
    idx = np.arange(grid.points_per_axis) - grid.points_per_axis // 2
    return _readonly(idx * grid.freq_spacing)


@cached(LRUCache(maxsize=16))
def _radius(grid: Grid, space: Space) -> np.ndarray:
    squared = sum(c**2 for c in grid.mesh(space))
    return _readonly(np.sqrt(np.broadcast_to(squared, grid.shape)).copy())


class SampledField(BaseModel):
    """Complex samples of a function on a Grid, in physical or frequency space."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    values: np.ndarray
    space: Space = "physical"

    @field_validator("values", mode="before")
    @classmethod
    def _as_complex(cls, value) -> np.ndarray:
        arr = np.ascontiguousarray(value, dtype=np.complex128)
        if not np.all(np.isfinite(arr)):
            raise ValueError("field values must be finite")
        return arr

    @model_validator(mode="after")
    def _check_shape(self):
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid shape {self.grid.shape}"
            )
        self.values.setflags(write=False)
        return self

    def with_values(self, values: np.ndarray, space: Space | None = None) -> "SampledField":
        return SampledField(grid=self.grid, values=values, space=space or self.space)

    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)


class QuadratureResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float | complex
    abs_error_estimate: float = Field(0.0, ge=0)
    # False when no refined grid was supplied and the estimate is a placeholder
    estimated: bool = False

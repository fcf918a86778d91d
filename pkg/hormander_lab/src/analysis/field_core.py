"""Periodic-grid model of functions on R^d.

Transforms are Riemann sums of the continuous Fourier integral:
forward multiplies the centered DFT by h^d, inverse multiplies the centered
inverse DFT by (M / 2L)^d, so the pair is an exact inverse on the grid.
"""

from collections.abc import Callable, Sequence

import numpy as np
from scipy import fft as sp_fft

from hormander_lab.src.models.fields import Grid, QuadratureResult, SampledField, Space
from hormander_lab.src.utils.errors import GridError
from hormander_lab.src.utils.logging import get_logger
from hormander_lab.src.utils.settings import LabSettings, get_setting
from hormander_lab.src.utils.summation import stable_sum

logger = get_logger(__name__)

# Complex entries per block of the trigonometric interpolation matrix
_INTERP_BLOCK = 2**22


def make_grid(dim: int, half_width: float, points_per_axis: int) -> Grid:
    if dim not in (1, 2, 3, 4):
        raise GridError(f"dim must be in 1..4, got {dim}")
    if points_per_axis % 2 or points_per_axis < 8:
        raise GridError(f"points_per_axis must be even and >= 8, got {points_per_axis}")
    if not half_width > 0:
        raise GridError(f"half_width must be positive, got {half_width}")
    cap = get_setting(LabSettings).max_grid_samples
    if points_per_axis**dim > cap:
        raise GridError(
            f"grid of {points_per_axis}^{dim} samples exceeds the cap of {cap} samples"
        )
    grid = Grid(dim=dim, half_width=float(half_width), points_per_axis=points_per_axis)
    logger.debug("grid_built", dim=dim, half_width=half_width, m=points_per_axis)
    return grid


def field_from_function(
    grid: Grid, fn: Callable[..., np.ndarray], space: Space = "physical"
) -> SampledField:
    """Sample ``fn(*coords)`` on the open coordinate mesh."""
    values = np.broadcast_to(fn(*grid.mesh(space)), grid.shape)
    return SampledField(grid=grid, values=np.array(values, dtype=np.complex128), space=space)


def radial_field(
    grid: Grid, profile: Callable[[np.ndarray], np.ndarray], space: Space = "physical"
) -> SampledField:
    return SampledField(grid=grid, values=profile(grid.radius(space)), space=space)


def forward_transform(f: SampledField) -> SampledField:
    if f.space != "physical":
        raise GridError("forward_transform expects a physical-space field")
    spectrum = sp_fft.fftshift(sp_fft.fftn(sp_fft.ifftshift(f.values)))
    return f.with_values(spectrum * f.grid.cell_measure, space="frequency")


def inverse_transform(F: SampledField) -> SampledField:
    if F.space != "frequency":
        raise GridError("inverse_transform expects a frequency-space field")
    grid = F.grid
    values = sp_fft.fftshift(sp_fft.ifftn(sp_fft.ifftshift(F.values)))
    scale = (grid.points_per_axis * grid.freq_spacing) ** grid.dim
    return F.with_values(values * scale, space="physical")


def reflect(f: SampledField) -> SampledField:
    """g(x) = f(-x) on the centered grid (index -M/2 maps to itself by periodicity)."""
    values = f.values
    for axis in range(f.grid.dim):
        values = np.roll(np.flip(values, axis=axis), 1, axis=axis)
    return f.with_values(values)


def tensor_product(*fields: SampledField) -> SampledField:
    if not fields:
        raise GridError("tensor_product needs at least one field")
    grid = fields[0].grid
    space = fields[0].space
    for f in fields[1:]:
        if f.grid != grid:
            raise GridError("tensor_product inputs must share one grid")
        if f.space != space:
            raise GridError("tensor_product inputs must share one space")
    dim = grid.dim * len(fields)
    if dim > 4:
        raise GridError(f"tensor product dimension m*n = {dim} exceeds 4")

    values = fields[0].values
    for f in fields[1:]:
        values = np.multiply.outer(values, f.values)
    out_grid = make_grid(dim, grid.half_width, grid.points_per_axis)
    return SampledField(grid=out_grid, values=values, space=space)


def diagonal_restrict(F: SampledField, m: int) -> SampledField:
    grid = F.grid
    if m < 1 or grid.dim % m:
        raise GridError(f"grid dimension {grid.dim} is not divisible by m = {m}")
    if F.space != "physical":
        raise GridError("diagonal_restrict expects a physical-space field")
    n = grid.dim // m
    block = grid.points_per_axis**n
    flat = F.values.reshape((block,) * m)
    idx = np.arange(block)
    diag = flat[(idx,) * m].reshape((grid.points_per_axis,) * n)
    out_grid = make_grid(n, grid.half_width, grid.points_per_axis)
    return SampledField(grid=out_grid, values=diag, space="physical")


def integrate(f: SampledField, refined: SampledField | None = None) -> QuadratureResult:
    """Riemann sum; with a refined sampling the Richardson difference is the error estimate."""
    if f.space != "physical":
        raise GridError("integrate expects a physical-space field")
    value = stable_sum(f.values) * f.grid.cell_measure
    value = _real_if_close(value)
    if refined is None:
        return QuadratureResult(value=value, abs_error_estimate=0.0, estimated=False)

    if refined.grid.dim != f.grid.dim:
        raise GridError("refined field must live on a grid of the same dimension")
    fine = _real_if_close(stable_sum(refined.values) * refined.grid.cell_measure)
    return QuadratureResult(value=value, abs_error_estimate=abs(fine - value), estimated=True)


def lp_norm(f: SampledField, p: float) -> float:
    if not p > 0:
        raise GridError(f"p must be positive, got {p}")
    mag = np.abs(f.values)
    if np.isinf(p):
        return float(mag.max(initial=0.0))
    measure = f.grid.cell_measure if f.space == "physical" else f.grid.freq_cell_measure
    return float(stable_sum(mag**p) * measure) ** (1.0 / p)


def pairing(f: SampledField, g: SampledField) -> complex:
    """Bilinear pairing <f, g> = integral of f g (no conjugation)."""
    if f.grid != g.grid:
        raise GridError("pairing needs fields on one grid")
    return complex(stable_sum(f.values * g.values) * f.grid.cell_measure)


def sample_at(f: SampledField, points: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """Evaluate the trigonometric interpolant of a physical field at arbitrary points.

    Exact for fields band-limited strictly inside the Nyquist band; the
    interpolant is 2L-periodic so points outside the cube wrap.
    """
    if f.space != "physical":
        raise GridError("sample_at expects a physical-space field")
    grid = f.grid
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.shape[-1] != grid.dim:
        raise GridError(f"points must have {grid.dim} coordinates")

    spectrum = forward_transform(f).values
    keep = np.abs(spectrum) > 1e-15 * max(np.abs(spectrum).max(initial=0.0), 1e-300)
    if not keep.any():
        return np.zeros(len(pts), dtype=np.complex128)
    freq = np.stack(
        [np.broadcast_to(c, grid.shape)[keep] for c in grid.mesh("frequency")], axis=-1
    )
    coeff = spectrum[keep] * grid.freq_cell_measure

    step = max(1, _INTERP_BLOCK // len(coeff))
    out = np.empty(len(pts), dtype=np.complex128)
    for start in range(0, len(pts), step):
        chunk = pts[start : start + step]
        phase = np.exp(2j * np.pi * (chunk @ freq.T))
        out[start : start + step] = phase @ coeff
    return out


def _real_if_close(value: complex | float) -> complex | float:
    if isinstance(value, complex) and value.imag == 0.0:
        return value.real
    return value

"""Bessel potentials, Lorentz-Sobolev norms and maximal functions."""

import math
from typing import Literal

import numpy as np
from scipy.ndimage import maximum_filter1d

from hormander_lab.src.analysis.field_core import (
    forward_transform,
    inverse_transform,
    lp_norm,
    sample_at,
)
from hormander_lab.src.analysis.lorentz import lorentz_norm
from hormander_lab.src.models.fields import Grid, SampledField
from hormander_lab.src.models.indices import LorentzIndex, MaximalConfig, SobolevIndex
from hormander_lab.src.utils.errors import GridError, ParameterError
from hormander_lab.src.utils.logging import get_logger

logger = get_logger(__name__)


def bessel_symbol(grid: Grid, s: float) -> np.ndarray:
    """(1 + 4 pi^2 |xi|^2)^{s/2} on the frequency grid."""
    return (1.0 + 4.0 * math.pi**2 * grid.radius("frequency") ** 2) ** (s / 2.0)


def bessel_potential(
    f: SampledField, s: float, direction: Literal["forward", "inverse"] = "forward"
) -> SampledField:
    """(I - Delta)^{s/2} f (forward) or (I - Delta)^{-s/2} f (inverse).

    Frequency-space input is multiplied directly and returned in frequency space.
    """
    if s < 0:
        raise ParameterError(f"s must be nonnegative, got {s}")
    if direction not in ("forward", "inverse"):
        raise ParameterError(f"unknown direction {direction!r}")
    if s == 0:
        return f
    exponent = s if direction == "forward" else -s
    weight = bessel_symbol(f.grid, exponent)
    if f.space == "frequency":
        return f.with_values(f.values * weight)
    spectrum = forward_transform(f)
    return inverse_transform(spectrum.with_values(spectrum.values * weight))


def lorentz_sobolev_norm(f: SampledField, idx: SobolevIndex) -> float:
    if f.space != "physical":
        raise GridError("lorentz_sobolev_norm expects a physical-space field")
    return lorentz_norm(bessel_potential(f, idx.s, "forward"), idx.lorentz)


def dyadic_radii(grid: Grid, top: float | None = None) -> tuple[float, ...]:
    """Half-widths h/2, h, 2h, ... up to ``top`` (default L)."""
    top = grid.half_width if top is None else top
    radii = []
    r = grid.spacing / 2.0
    while r <= top * (1 + 1e-12):
        radii.append(r)
        r *= 2.0
    return tuple(radii)


def all_radii(grid: Grid) -> tuple[float, ...]:
    """Every grid-aligned half-width w h / 2, w = 1..M."""
    return tuple(w * grid.spacing / 2.0 for w in range(1, grid.points_per_axis + 1))


def _widths(grid: Grid, cfg: MaximalConfig) -> list[int]:
    if cfg.radius_set[-1] > grid.half_width * (1 + 1e-12):
        raise ParameterError(
            f"radius {cfg.radius_set[-1]} exceeds the domain half-width {grid.half_width}"
        )
    widths = {1}
    for radius in cfg.radius_set:
        w = int(round(2.0 * radius / grid.spacing))
        widths.add(min(max(w, 1), grid.points_per_axis))
    return sorted(widths)


def _window_sums(values: np.ndarray, width: int) -> np.ndarray:
    """Periodic box sums over [a, a + width) along every axis, via summed-area tables."""
    out = values
    for axis in range(values.ndim):
        m = out.shape[axis]
        head = np.take(out, np.arange(width - 1), axis=axis)
        extended = np.concatenate([out, head], axis=axis)
        cumulative = np.cumsum(extended, axis=axis)
        zero_shape = list(extended.shape)
        zero_shape[axis] = 1
        cumulative = np.concatenate([np.zeros(zero_shape), cumulative], axis=axis)
        upper = np.take(cumulative, np.arange(width, width + m), axis=axis)
        lower = np.take(cumulative, np.arange(0, m), axis=axis)
        out = upper - lower
    return out


def _trailing_max(values: np.ndarray, width: int) -> np.ndarray:
    """out[i] = max over start points a in [i - width + 1, i] (periodic), per axis."""
    out = values
    for axis in range(values.ndim):
        # positive origin moves the window toward lower indices
        out = maximum_filter1d(out, size=width, axis=axis, mode="wrap", origin=(width - 1) // 2)
    return out


def maximal_function(f: SampledField, cfg: MaximalConfig) -> SampledField:
    """M_r f: sup over grid-aligned cubes containing x of the r-th power mean of |f|."""
    if f.space != "physical":
        raise GridError("maximal_function expects a physical-space field")
    powered = np.abs(f.values) ** cfg.r
    best = np.zeros(f.grid.shape)
    for width in _widths(f.grid, cfg):
        averages = _window_sums(powered, width) / width**f.grid.dim
        np.maximum(best, _trailing_max(averages, width), out=best)
    # cube averages never fall below the cell value; clip summed-area rounding
    np.maximum(best, powered, out=best)
    return f.with_values(best ** (1.0 / cfg.r))


def maximal_brute_force(f: SampledField, cfg: MaximalConfig) -> np.ndarray:
    """Exhaustive oracle for maximal_function on 1-dim grids."""
    if f.grid.dim != 1:
        raise GridError("brute-force maximal oracle is 1-dim only")
    m = f.grid.points_per_axis
    powered = np.abs(f.values) ** cfg.r
    out = np.zeros(m)
    for width in _widths(f.grid, cfg):
        for start in range(m):
            idx = [(start + o) % m for o in range(width)]
            avg = powered[idx].sum() / width
            for i in idx:
                out[i] = max(out[i], avg)
    return out ** (1.0 / cfg.r)


def shifted_weight_profile(
    f: SampledField, x: np.ndarray | tuple[float, ...], k: int, s: float
) -> float:
    """L^{d/s,inf} norm of y -> f(x - y/2^k) (1 + 4 pi^2 |y|^2)^{-s/2} on the grid."""
    grid = f.grid
    if not 0 < s < grid.dim:
        raise ParameterError(f"need 0 < s < d = {grid.dim}, got s = {s}")
    x = np.asarray(x, dtype=np.float64).reshape(grid.dim)
    ys = grid.points()
    shifted = sample_at(f, x[None, :] - ys / 2.0**k).reshape(grid.shape)
    weight = (1.0 + 4.0 * math.pi**2 * grid.radius() ** 2) ** (-s / 2.0)
    profile = f.with_values(shifted * weight)
    return lorentz_norm(profile, LorentzIndex(p=grid.dim / s, q=math.inf))


def product_estimate_ratio(
    f: SampledField, idx: SobolevIndex, weight: SampledField | None = None
) -> float:
    """||theta f||_{L^{p,q}_s} / ||f||_{L^{p,q}_s}; theta defaults to exp(-pi |x|^2)."""
    if weight is None:
        weight = f.with_values(np.exp(-math.pi * f.grid.radius() ** 2))
    denominator = lorentz_sobolev_norm(f, idx)
    if denominator == 0:
        return 0.0
    return lorentz_sobolev_norm(f.with_values(f.values * weight.values), idx) / denominator


def mixed_norm(fields: list[SampledField], p: float, q: float) -> float:
    """L^p(l^q) norm of a finite family."""
    stack = np.stack([np.abs(f.values) for f in fields])
    if math.isinf(q):
        pointwise = stack.max(axis=0)
    else:
        pointwise = (stack**q).sum(axis=0) ** (1.0 / q)
    return lp_norm(fields[0].with_values(pointwise), p)


def vector_maximal_ratio(
    fields: list[SampledField], cfg: MaximalConfig, p: float, q: float
) -> float:
    """Fefferman-Stein ratio ||{M_r f_k}||_{L^p(l^q)} / ||{f_k}||_{L^p(l^q)}."""
    if not (cfg.r < p and cfg.r < q):
        raise ParameterError(f"Fefferman-Stein needs r < p and r < q, got r={cfg.r}, p={p}, q={q}")
    denominator = mixed_norm(fields, p, q)
    if denominator == 0:
        return 0.0
    maximal = [maximal_function(f, cfg) for f in fields]
    return mixed_norm(maximal, p, q) / denominator

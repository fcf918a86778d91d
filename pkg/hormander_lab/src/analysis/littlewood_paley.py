"""Littlewood-Paley apparatus and the dyadic regrouping of symbols.

The finite window K = k_min..k_max lumps everything below k_min into
phi^(xi / 2^k_min), so per slot the bins sum to phi^(xi / 2^k_max), which
is exactly 1 on |xi| <= 2^k_max.
"""

import itertools
import json
from pathlib import Path
from typing import Literal

import numpy as np
from cachetools import LRUCache, cached
from scipy.interpolate import RegularGridInterpolator

from hormander_lab.src.analysis.field_core import (
    forward_transform,
    inverse_transform,
    radial_field,
)
from hormander_lab.src.analysis.fourier_calculus import mixed_norm
from hormander_lab.src.models.families import LPFamily, phi_profile, psi_profile
from hormander_lab.src.models.fields import Grid, SampledField
from hormander_lab.src.models.symbols import (
    MultiplierSymbol,
    SymbolDecomposition,
    slot_radius,
)
from hormander_lab.src.utils.errors import GridError, ParameterError, ResolutionError
from hormander_lab.src.utils.field_io import dump_field
from hormander_lab.src.utils.logging import get_logger

logger = get_logger(__name__)


def _partition_probe(lo: float, hi: float, grid: Grid | None) -> np.ndarray:
    probe = np.geomspace(lo, hi, 4097)
    if grid is None:
        return probe
    radii = np.unique(grid.radius("frequency"))
    return np.concatenate([probe, radii[(radii >= lo) & (radii <= hi)]])


@cached(LRUCache(maxsize=32))
def build_family(m: int, n: int, window: tuple[int, int], grid: Grid | None = None) -> LPFamily:
    if m < 1 or n < 1:
        raise ParameterError(f"need m, n >= 1, got m={m}, n={n}")
    k_min, k_max = window
    if k_max - k_min < 2:
        raise ParameterError(f"window {window} must span at least three octaves")
    if grid is not None:
        if grid.dim not in (n, m * n):
            raise GridError(f"family grid must be {n}- or {m * n}-dim, got {grid.dim}")
        if 2.0**k_max > grid.nyquist or 2.0**k_min < grid.freq_spacing:
            raise ResolutionError(
                f"window {window} is wider than the resolvable range "
                f"[{grid.freq_spacing}, {grid.nyquist}] of the grid"
            )

    lo, hi = 2.0 ** (k_min + 1), 2.0 ** (k_max - 1)
    probe = _partition_probe(lo, hi, grid)
    total = sum(psi_profile(probe / 2.0**k) for k in range(k_min, k_max + 1))
    partition_defect = float(np.max(np.abs(total - 1.0)))

    tail = sum(psi_profile(probe / 2.0**j) for j in range(1, k_max + 3))
    low_defect = float(np.max(np.abs(phi_profile(probe) + tail - 1.0)))

    family = LPFamily(
        m=m,
        n=n,
        k_min=k_min,
        k_max=k_max,
        partition_defect=partition_defect,
        low_defect=low_defect,
    )
    logger.info(
        "family_built", m=m, n=n, window=window, partition_defect=partition_defect
    )
    return family


def _slot_radii(grid: Grid, m: int, n: int) -> list[np.ndarray]:
    xi = grid.mesh("frequency")
    return [slot_radius(xi, j, n) for j in range(m)]


def _slot_bins(sigma: MultiplierSymbol, fam: LPFamily) -> list[dict[int, np.ndarray]]:
    return [fam.bins(rho) for rho in _slot_radii(sigma.grid, sigma.m, sigma.n)]


def _cumulative(bins: dict[int, np.ndarray], upto: int, like: np.ndarray) -> np.ndarray:
    """Sum of the bins with index <= upto."""
    acc = np.zeros_like(like)
    for k, weight in bins.items():
        if k <= upto:
            acc = acc + weight
    return acc


def _check_resolvable(sigma: MultiplierSymbol, fam: LPFamily) -> None:
    if sigma.m != fam.m or sigma.n != fam.n:
        raise ParameterError("symbol and family disagree on (m, n)")
    reach = 2.0**fam.k_max
    radii = _slot_radii(sigma.grid, sigma.m, sigma.n)
    outside = np.zeros(sigma.grid.shape, dtype=bool)
    for rho in radii:
        outside |= np.broadcast_to(rho > reach, sigma.grid.shape)
    scale = max(1.0, sigma.max_abs())
    if np.any(np.abs(sigma.samples()[outside]) > 1e-12 * scale):
        raise ResolutionError(
            f"symbol support reaches beyond |xi_j| = 2^{fam.k_max}, outside the window"
        )


def decompose(sigma: MultiplierSymbol, fam: LPFamily) -> SymbolDecomposition:
    """Regroup sigma by the slot carrying the largest dyadic index.

    Part l (0-based) collects k_j < k_l for j < l and k_j <= k_l for j > l,
    so ties go to the lowest slot. The high part of part 0 keeps
    k_j <= k_0 - low_shift for every j >= 1; the low part is the rest.
    """
    _check_resolvable(sigma, fam)
    m = sigma.m
    values = sigma.samples()
    one = np.ones(sigma.grid.shape)
    bins = _slot_bins(sigma, fam)

    parts = []
    for l in range(m):
        acc = np.zeros(sigma.grid.shape, dtype=np.complex128)
        for kappa in fam.window:
            term = np.broadcast_to(bins[l][kappa], sigma.grid.shape).astype(np.float64)
            for j in range(m):
                if j == l:
                    continue
                upto = kappa - 1 if j < l else kappa
                term = term * _cumulative(bins[j], upto, one)
            acc = acc + term
        parts.append(values * acc)

    shift = fam.low_shift
    high_acc = np.zeros(sigma.grid.shape)
    for kappa in fam.window:
        term = np.broadcast_to(bins[0][kappa], sigma.grid.shape).astype(np.float64)
        for j in range(1, m):
            term = term * _cumulative(bins[j], kappa - shift, one)
        high_acc = high_acc + term
    high = values * high_acc
    low = parts[0] - high

    return SymbolDecomposition(
        parts=tuple(parts), low=low, high=high, k_window=(fam.k_min, fam.k_max)
    )


def brute_force_decompose(sigma: MultiplierSymbol, fam: LPFamily) -> SymbolDecomposition:
    """Oracle: enumerate every index tuple (k_1, ..., k_m) and assign it by the index sets."""
    _check_resolvable(sigma, fam)
    m = sigma.m
    bins = _slot_bins(sigma, fam)
    shape = sigma.grid.shape
    parts = [np.zeros(shape, dtype=np.complex128) for _ in range(m)]
    low = np.zeros(shape, dtype=np.complex128)
    high = np.zeros(shape, dtype=np.complex128)
    shift = fam.low_shift

    for ks in itertools.product(fam.window, repeat=m):
        term = sigma.samples().copy()
        for j, k in enumerate(ks):
            term = term * bins[j][k]
        top = max(ks)
        owner = ks.index(top)
        parts[owner] += term
        if owner == 0:
            if all(k <= ks[0] - shift for k in ks[1:]):
                high += term
            else:
                low += term

    return SymbolDecomposition(
        parts=tuple(parts), low=low, high=high, k_window=(fam.k_min, fam.k_max)
    )


def swap_slots(values: np.ndarray, n: int) -> np.ndarray:
    """Exchange the coordinate blocks of slots 1 and 2 (m = 2)."""
    axes = list(range(values.ndim))
    order = axes[n : 2 * n] + axes[:n] + axes[2 * n :]
    return np.transpose(values, order)


def tie_residual(sigma: MultiplierSymbol, fam: LPFamily) -> float:
    """For m = 2, swap(part 1 of sigma) - part 2 of swap(sigma) is the swapped k_1 = k_2 terms."""
    if sigma.m != 2:
        raise ParameterError("tie_residual is defined for m = 2")
    n = sigma.n
    swapped = sigma.model_copy(
        update={"values": swap_slots(sigma.samples(), n).copy(), "closed_form": None}
    )
    first = decompose(sigma, fam).parts[0]
    second_of_swapped = decompose(swapped, fam).parts[1]

    bins = _slot_bins(sigma, fam)
    ties = np.zeros(sigma.grid.shape, dtype=np.complex128)
    for k in fam.window:
        ties = ties + sigma.samples() * bins[0][k] * bins[1][k]
    residual = swap_slots(first, n) - second_of_swapped - swap_slots(ties, n)
    return float(np.abs(residual).max(initial=0.0))


def project(
    g: SampledField,
    fam: LPFamily,
    kind: Literal["band", "low", "low_shifted"],
    k: int,
) -> SampledField:
    """(g)_k = psi_k * g, (g)^k = phi_k * g, (g)^{k,m} = phi_{k - 5 - floor(log2 m)} * g."""
    if k not in fam.window:
        raise ParameterError(f"k = {k} is outside the window {fam.k_min}..{fam.k_max}")
    if g.space != "physical":
        raise GridError("project expects a physical-space field")
    rho = g.grid.radius("frequency")
    if kind == "band":
        weight = psi_profile(rho / 2.0**k)
    elif kind == "low":
        weight = phi_profile(rho / 2.0**k)
    elif kind == "low_shifted":
        weight = phi_profile(rho / 2.0 ** (k - fam.low_shift))
    else:
        raise ParameterError(f"unknown projection kind {kind!r}")
    spectrum = forward_transform(g)
    return inverse_transform(spectrum.with_values(spectrum.values * weight))


def dilate_symbol(sigma: MultiplierSymbol, k: int) -> MultiplierSymbol:
    """sigma(2^k xi) on the same grid."""
    scale = 2.0**k
    hint = None
    if sigma.support_hint is not None:
        hint = (sigma.support_hint[0] / scale, sigma.support_hint[1] / scale)

    if sigma.closed_form is not None:
        base = sigma.closed_form

        def dilated(xi: tuple[np.ndarray, ...]) -> np.ndarray:
            return base(tuple(scale * np.asarray(c) for c in xi))

        values = np.broadcast_to(dilated(sigma.grid.mesh("frequency")), sigma.grid.shape)
        return MultiplierSymbol(
            m=sigma.m,
            n=sigma.n,
            grid=sigma.grid,
            values=np.array(values, dtype=np.complex128),
            closed_form=dilated,
            support_hint=hint,
        )

    grid = sigma.grid
    corner = grid.nyquist - grid.freq_spacing
    if hint is not None and hint[1] > corner:
        raise ResolutionError("dilated support leaves the frequency grid")
    if hint is None and k < 0:
        nonzero = np.abs(sigma.samples()) > 1e-12 * max(1.0, sigma.max_abs())
        if np.any(nonzero & (grid.radius("frequency") * (1.0 / scale) > corner)):
            raise ResolutionError("dilated support leaves the frequency grid")

    axis = grid.freq_axis()
    interpolant = RegularGridInterpolator(
        (axis,) * grid.dim, sigma.samples(), method="linear", bounds_error=False, fill_value=0.0
    )
    targets = grid.points("frequency") * scale
    values = interpolant(targets).reshape(grid.shape)
    return MultiplierSymbol(
        m=sigma.m,
        n=sigma.n,
        grid=grid,
        values=values,
        support_hint=hint,
        interpolation_error=_linear_interpolation_bound(sigma.samples()),
    )


def _linear_interpolation_bound(values: np.ndarray) -> float:
    """max |second difference| / 8, the linear-interpolation error on one cell."""
    bound = 0.0
    for axis in range(values.ndim):
        second = np.diff(values, n=2, axis=axis)
        bound = max(bound, float(np.abs(second).max(initial=0.0)) / 8.0)
    return bound


def reassembly_ratio(
    gs: dict[int, SampledField], fam: LPFamily, h: int, p: float, q: float
) -> float:
    """||{psi_k * sum_{|l-k|<=h} g_l}||_{L^p(l^q)} / ||{g_k}||_{L^p(l^q)}."""
    if h < 0:
        raise ParameterError("h must be nonnegative")
    denominator = mixed_norm(list(gs.values()), p, q)
    if denominator == 0:
        return 0.0
    reassembled = []
    for k in gs:
        neighbours = [gs[l] for l in range(k - h, k + h + 1) if l in gs]
        total = neighbours[0].with_values(sum(g.values for g in neighbours))
        reassembled.append(project(total, fam, "band", k))
    return mixed_norm(reassembled, p, q) / denominator


def write_family(fam: LPFamily, grid: Grid, directory: str | Path) -> Path:
    """Dump every profile on the grid's frequency points plus a JSON sidecar."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    profiles = {
        "psi": fam.psi_hat,
        "phi": fam.phi_hat,
        "Theta_m": fam.theta_m_hat,
        "Gamma": fam.gamma_hat,
        "Lambda_m": fam.lambda_m_hat,
    }
    for name, profile in profiles.items():
        dump_field(radial_field(grid, profile, space="frequency"), directory / f"{name}.hlab")
    sidecar = {
        "m": fam.m,
        "n": fam.n,
        "window": [fam.k_min, fam.k_max],
        "partition_defect": fam.partition_defect,
        "annuli": fam.annuli(),
    }
    path = directory / "family.json"
    path.write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    return path

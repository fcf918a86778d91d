"""The m-linear multiplier operator T_sigma and its transposes.

Slots are numbered 1..m in the public functions. A symbol lives on the
(m n)-dim frequency grid; slot j owns axes (j-1) n .. j n - 1.
"""

from collections.abc import Sequence

import numpy as np

from hormander_lab.src.analysis.field_core import (
    diagonal_restrict,
    forward_transform,
    inverse_transform,
    make_grid,
    pairing,
    tensor_product,
)
from hormander_lab.src.analysis.fourier_calculus import (
    dyadic_radii,
    lorentz_sobolev_norm,
    maximal_function,
)
from hormander_lab.src.models.families import LAMBDA_ANNULUS, LPFamily, psi_profile
from hormander_lab.src.models.fields import Grid, SampledField
from hormander_lab.src.models.indices import MaximalConfig, SobolevIndex
from hormander_lab.src.models.symbols import (
    DominationReport,
    MapGeometry,
    MultiplierSymbol,
    OperatorApplication,
    SymbolFn,
    total_radius,
)
from hormander_lab.src.utils.errors import (
    AliasingError,
    BudgetError,
    GridError,
    ParameterError,
)
from hormander_lab.src.utils.logging import get_logger
from hormander_lab.src.utils.settings import LabSettings, get_setting
from hormander_lab.src.utils.summation import stable_sum

logger = get_logger(__name__)

# Spectral coefficients below this fraction of the peak count as zero
_ZERO_MODE = 1e-10


def alias_band(grid: Grid, m: int) -> float:
    """Per-axis input band M / (4 m 2L) inside which sums of m frequencies never wrap."""
    return grid.points_per_axis / (4.0 * m * 2.0 * grid.half_width)


def _nonzero_modes(spectrum: np.ndarray) -> np.ndarray:
    peak = float(np.abs(spectrum).max(initial=0.0))
    if peak == 0.0:
        return np.zeros(spectrum.shape, dtype=bool)
    return np.abs(spectrum) > _ZERO_MODE * peak


def check_alias(f: SampledField, m: int) -> None:
    band = alias_band(f.grid, m)
    nonzero = _nonzero_modes(forward_transform(f).values)
    for coord in f.grid.mesh("frequency"):
        if np.any(nonzero & (np.abs(coord) > band * (1 + 1e-12))):
            raise AliasingError(
                f"input has modes beyond the alias-safe band |xi| <= {band:.6g} for m = {m}"
            )


def _validate_inputs(sigma: MultiplierSymbol, fields: Sequence[SampledField]) -> Grid:
    if len(fields) != sigma.m:
        raise ParameterError(f"symbol is {sigma.m}-linear but got {len(fields)} inputs")
    grid = fields[0].grid
    for f in fields:
        if f.grid != grid:
            raise GridError("all inputs must share one grid")
        if f.space != "physical":
            raise GridError("inputs must be physical-space fields")
    if grid.dim != sigma.n:
        raise GridError(f"inputs are {grid.dim}-dim but the symbol has n = {sigma.n}")
    sg = sigma.grid
    if sg.points_per_axis != grid.points_per_axis or sg.half_width != grid.half_width:
        raise GridError("symbol grid axes do not match the input grid")
    return grid


def apply(
    sigma: MultiplierSymbol,
    *fields: SampledField,
    check_direct: bool = False,
    tolerance: float = 1e-8,
) -> OperatorApplication:
    """T_sigma(f_1, ..., f_m) through the (m n)-dim spectral tensor and the diagonal."""
    _validate_inputs(sigma, fields)
    for f in fields:
        check_alias(f, sigma.m)

    spectra = [forward_transform(f) for f in fields]
    joint = spectra[0] if sigma.m == 1 else tensor_product(*spectra)
    product = joint.with_values(joint.values * sigma.samples())
    output = diagonal_restrict(inverse_transform(product), sigma.m)

    if not check_direct:
        return OperatorApplication(output=output, method="spectral")

    direct = apply_direct(sigma, *fields).output
    scale = max(float(np.abs(direct.values).max(initial=0.0)), 1e-300)
    residual = float(np.abs(output.values - direct.values).max(initial=0.0)) / scale
    logger.debug("direct_check", residual=residual, tolerance=tolerance)
    return OperatorApplication(
        output=output,
        method="spectral",
        residual=residual,
        checked=True,
        tolerance=tolerance,
    )


def apply_direct(sigma: MultiplierSymbol, *fields: SampledField) -> OperatorApplication:
    """Literal sum over every frequency tuple, one output point at a time."""
    grid = _validate_inputs(sigma, fields)
    terms = grid.points_per_axis ** (sigma.m * sigma.n)
    budget = get_setting(LabSettings).direct_term_budget
    if terms > budget:
        raise BudgetError(f"{terms} terms per output point exceed the budget of {budget}")

    spectra = [forward_transform(f).values for f in fields]
    freq = grid.mesh("frequency")
    weight = grid.freq_cell_measure**sigma.m
    points = grid.points()
    out = np.empty(len(points), dtype=np.complex128)

    for index, x in enumerate(points):
        phase = np.exp(2j * np.pi * sum(xc * fc for xc, fc in zip(x, freq)))
        term = spectra[0] * phase
        for spectrum in spectra[1:]:
            term = np.multiply.outer(term, spectrum * phase)
        out[index] = stable_sum(sigma.samples() * term) * weight

    output = SampledField(grid=grid, values=out.reshape(grid.shape), space="physical")
    return OperatorApplication(output=output, method="direct")


def apply_sparse(sigma: MultiplierSymbol, *fields: SampledField) -> OperatorApplication:
    """Sum over the nonzero input modes only, with sigma from its closed form.

    Frequency tuples with the same sum are gathered on the n-dim spectrum
    before a single inverse transform.
    """
    if sigma.closed_form is None:
        raise ParameterError("apply_sparse needs a symbol with a closed form")
    if len(fields) != sigma.m:
        raise ParameterError(f"symbol is {sigma.m}-linear but got {len(fields)} inputs")
    grid = fields[0].grid
    if any(f.grid != grid for f in fields) or grid.dim != sigma.n:
        raise GridError("inputs must share one n-dim grid")

    center = grid.center_index()
    half = grid.points_per_axis // 2
    mode_sets = []
    for f in fields:
        spectrum = forward_transform(f).values
        idx = np.argwhere(_nonzero_modes(spectrum))
        mode_sets.append((idx - center, spectrum[tuple(idx.T)]))

    if any(len(coeff) == 0 for _, coeff in mode_sets):
        zero = SampledField(grid=grid, values=np.zeros(grid.shape), space="physical")
        return OperatorApplication(output=zero, method="sparse")

    # every combination as flat arrays; total size is the product of the mode counts
    grids = np.meshgrid(*[np.arange(len(c)) for _, c in mode_sets], indexing="ij")
    picks = [g.ravel() for g in grids]
    index_sum = sum(modes[p] for (modes, _), p in zip(mode_sets, picks))
    if np.any(index_sum < -half) or np.any(index_sum >= half):
        raise AliasingError("sum frequency of the inputs leaves the grid")

    xi = []
    for (modes, _), p in zip(mode_sets, picks):
        for axis in range(sigma.n):
            xi.append(modes[p, axis] * grid.freq_spacing)
    coefficient = np.ones(len(picks[0]), dtype=np.complex128)
    for (_, coeff), p in zip(mode_sets, picks):
        coefficient = coefficient * coeff[p]
    values = np.asarray(sigma.evaluate(tuple(xi)), dtype=np.complex128) * coefficient

    spectrum = np.zeros(grid.shape, dtype=np.complex128)
    np.add.at(spectrum, tuple((index_sum + center).T), values)
    spectrum *= grid.freq_cell_measure ** (sigma.m - 1)
    output = inverse_transform(SampledField(grid=grid, values=spectrum, space="frequency"))
    return OperatorApplication(output=output, method="sparse")


def _check_slot(j: int, m: int) -> None:
    if not 1 <= j <= m:
        raise ParameterError(f"slot j must be in 1..{m}, got {j}")


def transposed_closed_form(fn: SymbolFn, m: int, n: int, j: int) -> SymbolFn:
    """xi -> fn(xi_1, ..., -(xi_1 + ... + xi_m), ..., xi_m) with the sum in slot j."""
    _check_slot(j, m)

    def transposed(xi: tuple[np.ndarray, ...]) -> np.ndarray:
        coords = [np.asarray(c) for c in xi]
        for t in range(n):
            total = sum(coords[i * n + t] for i in range(m))
            coords[(j - 1) * n + t] = -total
        return fn(tuple(coords))

    return transposed


def _centered_indices(grid: Grid) -> list[np.ndarray]:
    axis = np.arange(grid.points_per_axis) - grid.center_index()
    out = []
    for d in range(grid.dim):
        shape = [1] * grid.dim
        shape[d] = grid.points_per_axis
        out.append(axis.reshape(shape))
    return out


def _slot_sum_indices(grid: Grid, m: int, n: int, j: int) -> tuple[list[np.ndarray], np.ndarray]:
    """Centered index arrays with slot j replaced by minus the slot sum, and an in-range mask."""
    idx = [np.broadcast_to(c, grid.shape) for c in _centered_indices(grid)]
    half = grid.points_per_axis // 2
    valid = np.ones(grid.shape, dtype=bool)
    for t in range(n):
        mapped = -sum(idx[i * n + t] for i in range(m))
        valid &= (mapped >= -half) & (mapped < half)
        idx[(j - 1) * n + t] = mapped
    return idx, valid


def transpose_symbol(sigma: MultiplierSymbol, j: int) -> MultiplierSymbol:
    """sigma^{*j}; an index permutation with negation on the frequency grid."""
    m, n, grid = sigma.m, sigma.n, sigma.grid
    _check_slot(j, m)
    half = grid.points_per_axis // 2
    idx, valid = _slot_sum_indices(grid, m, n, j)

    # the map is an involution, so values of sigma are lost exactly where
    # their own image falls off the grid
    scale = max(1.0, sigma.max_abs())
    if np.any((np.abs(sigma.samples()) > 1e-12 * scale) & ~valid):
        raise AliasingError(f"support of sigma escapes the grid under the slot-{j} transpose")

    if sigma.closed_form is not None:
        fn = transposed_closed_form(sigma.closed_form, m, n, j)
        values = np.array(
            np.broadcast_to(fn(grid.mesh("frequency")), grid.shape), dtype=np.complex128
        )
        values[~valid] = 0.0
        return MultiplierSymbol(m=m, n=n, grid=grid, values=values, closed_form=fn)

    safe = [np.where(valid, c, 0) + half for c in idx]
    values = np.where(valid, sigma.samples()[tuple(safe)], 0.0)
    return MultiplierSymbol(m=m, n=n, grid=grid, values=values)


def duality_residual(
    sigma: MultiplierSymbol, fields: Sequence[SampledField], h: SampledField, j: int
) -> float:
    """Relative gap in <T_{sigma*j}(f), h> = <T_sigma(f_1, .., h, .., f_m), f_j>."""
    _check_slot(j, sigma.m)
    transposed = transpose_symbol(sigma, j)
    left = pairing(apply(transposed, *fields).output, h)
    swapped = list(fields)
    swapped[j - 1] = h
    right = pairing(apply(sigma, *swapped).output, fields[j - 1])
    scale = max(abs(left), abs(right), 1e-300)
    return abs(left - right) / scale


def coordinate_map(F: SampledField, m: int, j: int) -> SampledField:
    """T^j F(x_1, ..., x_m) = F(x_1, ..., -(x_1 + ... + x_m), ..., x_m), periodically."""
    grid = F.grid
    if F.space != "physical":
        raise GridError("coordinate_map expects a physical-space field")
    if m < 1 or grid.dim % m:
        raise GridError(f"grid dimension {grid.dim} is not divisible by m = {m}")
    _check_slot(j, m)
    n = grid.dim // m
    idx, _ = _slot_sum_indices(grid, m, n, j)
    size = grid.points_per_axis
    wrapped = tuple(np.mod(c + grid.center_index(), size) for c in idx)
    return F.with_values(F.values[wrapped])


def coordinate_map_ratio(F: SampledField, m: int, j: int, idx: SobolevIndex) -> float:
    """||T^j F||_{L^{p,q}_s} / ||F||_{L^{p,q}_s}."""
    denominator = lorentz_sobolev_norm(F, idx)
    if denominator == 0:
        return 0.0
    return lorentz_sobolev_norm(coordinate_map(F, m, j), idx) / denominator


def lambda_inclusion(m: int, n: int, j: int) -> MapGeometry:
    """Image of {1/2 <= |xi| <= 2} under the slot-j map against the plateau of Lambda^(m)."""
    _check_slot(j, m)
    block = np.eye(m)
    block[j - 1, :] = -1.0
    # the map acts as block (x) I_n, so its singular values are those of block
    singular = np.linalg.svd(np.kron(block, np.eye(n)), compute_uv=False)
    lo, hi = float(singular.min()), float(singular.max())
    return MapGeometry(
        singular_min=lo,
        singular_max=hi,
        image_lo=0.5 * lo,
        image_hi=2.0 * hi,
        plateau_lo=LAMBDA_ANNULUS[1],
        plateau_hi=LAMBDA_ANNULUS[2],
    )


def symbol_grid(m: int, n: int, size: int | None = None) -> Grid:
    """Grid on which symbols are treated as functions of mn variables."""
    settings = get_setting(LabSettings)
    size = size or settings.symbol_grid_m
    while size ** (m * n) > settings.max_grid_samples and size > 8:
        size //= 2
    return make_grid(m * n, settings.symbol_half_width, size)


def symbol_field(
    fn: SymbolFn, k: int, grid: Grid, *, localized: bool = True
) -> SampledField:
    """xi -> fn(2^k xi) Psi^(m)(xi) sampled as a physical field on ``grid``."""
    scale = 2.0**k
    xi = grid.mesh("physical")
    values = np.asarray(fn(tuple(scale * c for c in xi)), dtype=np.complex128)
    if localized:
        values = values * psi_profile(total_radius(xi))
    return SampledField(grid=grid, values=np.broadcast_to(values, grid.shape), space="physical")


def symbol_sup_norm(
    fn: SymbolFn, idx: SobolevIndex, ks: Sequence[int], grid: Grid
) -> tuple[float, int]:
    """max over k in ks of ||fn(2^k .) Psi^(m)||_{L^{p,q}_s}, with the maximising k."""
    best, best_k = -1.0, ks[0]
    for k in ks:
        value = lorentz_sobolev_norm(symbol_field(fn, k, grid), idx)
        if value > best:
            best, best_k = value, k
    return best, best_k


def transfer_ratio(
    sigma: MultiplierSymbol, j: int, idx: SobolevIndex, ks: Sequence[int], grid: Grid
) -> float:
    """sup_k norm of sigma^{*j}(2^k .) Psi^(m) over sup_k norm of sigma(2^k .) Psi^(m)."""
    if sigma.closed_form is None:
        raise ParameterError("transfer_ratio needs a symbol with a closed form")
    transposed = transposed_closed_form(sigma.closed_form, sigma.m, sigma.n, j)
    denominator, _ = symbol_sup_norm(sigma.closed_form, idx, ks, grid)
    if denominator == 0:
        return 0.0
    numerator, _ = symbol_sup_norm(transposed, idx, ks, grid)
    return numerator / denominator


def localize(sigma: MultiplierSymbol, fam: LPFamily, k: int) -> MultiplierSymbol:
    """sigma_k = sigma Theta^(m)(. / 2^k)."""
    if sigma.closed_form is None:
        raise ParameterError("localize needs a symbol with a closed form")
    base = sigma.closed_form
    scale = 2.0**k

    def local(xi: tuple[np.ndarray, ...]) -> np.ndarray:
        return base(xi) * fam.theta_m_hat(total_radius(xi) / scale)

    values = np.broadcast_to(local(sigma.grid.mesh("frequency")), sigma.grid.shape)
    return MultiplierSymbol(
        m=sigma.m,
        n=sigma.n,
        grid=sigma.grid,
        values=np.array(values, dtype=np.complex128),
        closed_form=local,
    )


def random_dyadic_symbol(
    m: int,
    n: int,
    grid: Grid,
    rng: np.random.Generator,
    ks: Sequence[int] = (-5, -4, -3, -2, -1),
    modulations: int = 2,
) -> MultiplierSymbol:
    """sum_k a_k Psi^(m)(xi / 2^k) (1 + 1/2 sum_i c_i cos(2 pi w_i . xi / 2^k)), sum |c_i| <= 1."""
    dim = m * n
    amplitudes = rng.uniform(0.5, 1.5, size=len(ks))
    weights = rng.uniform(-1.0, 1.0, size=(len(ks), modulations))
    weights /= np.maximum(np.abs(weights).sum(axis=1, keepdims=True), 1.0)
    directions = rng.standard_normal((len(ks), modulations, dim))

    def fn(xi: tuple[np.ndarray, ...]) -> np.ndarray:
        coords = [np.asarray(c, dtype=np.float64) for c in xi]
        radius = total_radius(coords)
        out = np.zeros(np.broadcast_shapes(*(c.shape for c in coords)))
        for a, c, w, k in zip(amplitudes, weights, directions, ks):
            scale = 2.0**k
            ripple = np.ones_like(out)
            for ci, wi in zip(c, w):
                phase = sum(wd * cd for wd, cd in zip(wi, coords)) / scale
                ripple = ripple + 0.5 * ci * np.cos(2.0 * np.pi * phase)
            out = out + a * psi_profile(radius / scale) * ripple
        return out

    values = np.broadcast_to(fn(grid.mesh("frequency")), grid.shape)
    return MultiplierSymbol(
        m=m,
        n=n,
        grid=grid,
        values=np.array(values, dtype=np.complex128),
        closed_form=fn,
        support_hint=(0.0, 2.0 ** (max(ks) + 1)),
    )


def pointwise_domination_check(
    sigma_k: MultiplierSymbol,
    fields: Sequence[SampledField],
    q: float,
    s: float,
    sample_points: np.ndarray | Sequence[Sequence[float]],
    k: int,
    sym_grid: Grid | None = None,
) -> DominationReport:
    """|sigma_k^v * (f_1 x ... x f_m)(x)| against ||sigma_k(2^k .)||_{L_s^{mn/s,1}} prod M_q f_j.

    ``sample_points`` are points of the (m n)-dim grid.
    """
    m, n = sigma_k.m, sigma_k.n
    dim = m * n
    if not dim / 2 < s < dim:
        raise ParameterError(f"need mn/2 < s < mn, got s = {s} for mn = {dim}")
    if not q > dim / s:
        raise ParameterError(f"need q > mn/s = {dim / s:.6g}, got q = {q}")
    if sigma_k.closed_form is None:
        raise ParameterError("pointwise_domination_check needs a symbol with a closed form")
    grid = _validate_inputs(sigma_k, fields)

    joint = fields[0] if m == 1 else tensor_product(*fields)
    spectrum = forward_transform(joint)
    convolved = inverse_transform(spectrum.with_values(spectrum.values * sigma_k.samples()))

    sym_grid = sym_grid or symbol_grid(m, n)
    norm_idx = SobolevIndex(s=s, p=dim / s, q=1.0)
    dilated = symbol_field(sigma_k.closed_form, k, sym_grid, localized=False)
    symbol_norm = lorentz_sobolev_norm(dilated, norm_idx)

    cfg = MaximalConfig(r=q, radius_set=dyadic_radii(grid))
    maximal = [np.abs(maximal_function(f, cfg).values) for f in fields]

    pts = np.atleast_2d(np.asarray(sample_points, dtype=np.float64))
    if pts.shape[-1] != dim:
        raise GridError(f"sample points must have {dim} coordinates")
    raw = pts / grid.spacing + grid.center_index()
    index = np.rint(raw).astype(int)
    off_grid = np.any(np.abs(raw - index) > 1e-9)
    if off_grid or np.any(index < 0) or np.any(index >= grid.points_per_axis):
        raise GridError("sample points must be grid points")

    lhs, rhs = [], []
    for point in index:
        lhs.append(float(abs(convolved.values[tuple(point)])))
        bound = symbol_norm
        for j in range(m):
            bound *= float(maximal[j][tuple(point[j * n : (j + 1) * n])])
        rhs.append(bound)
    return DominationReport(lhs=tuple(lhs), rhs=tuple(rhs), symbol_norm=symbol_norm)


"""Counterexample family for the sharpness of the Lorentz-Sobolev condition.

sigma^(N) = (H Phi_N)^ Gamma^ with H(x) = (1 + 4 pi^2 |x|^2)^{-t/2}
(1 + ln(1 + 4 pi^2 |x|^2))^{-gamma/2} and Phi_N(x) = eta(x / N). H is
radial, so (H Phi_N)^ is a Hankel transform evaluated by composite
Gauss-Legendre quadrature and tabulated on the thin annulus where Gamma^
lives; the FFT route is kept as a cross-check for well-resolved grids.
"""

import csv
import json
import math
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Literal

import numpy as np
from cachetools import LRUCache, cached
from scipy import integrate as sp_integrate
from scipy import special
from scipy.interpolate import CubicSpline

from hormander_lab.src.analysis.field_core import (
    forward_transform,
    inverse_transform,
    lp_norm,
    radial_field,
)
from hormander_lab.src.analysis.fourier_calculus import lorentz_sobolev_norm
from hormander_lab.src.analysis.multiplier_op import apply_sparse, symbol_field
from hormander_lab.src.models.families import (
    GAMMA_ANNULUS,
    LPFamily,
    cutoff_profile,
    plateau_profile,
    smooth_bump,
)
from hormander_lab.src.models.fields import Grid, QuadratureResult, SampledField
from hormander_lab.src.models.indices import SobolevIndex
from hormander_lab.src.models.sharpness import (
    KernelAsymptotics,
    PhasePoint,
    SharpnessParams,
    SweepCurve,
    SweepVerdict,
)
from hormander_lab.src.models.symbols import MultiplierSymbol, total_radius
from hormander_lab.src.utils.errors import GridError, ParameterError, ResolutionError
from hormander_lab.src.utils.logging import get_logger

logger = get_logger(__name__)

Profile = Callable[[np.ndarray], np.ndarray]

UPPER_BAND = 1.3
FIT_TOLERANCE = 0.3
SATURATION_TOLERANCE = 0.02
DILATIONS = (-1, 0, 1)

# Radii on which the closed form of sigma^(N) is tabulated; they cover the Gamma annulus
_TABLE_RADII = np.linspace(0.985, 1.015, 401)
_PANEL_WIDTH = 0.25
_PANEL_NODES = 16


def h_profile(rho: np.ndarray, t: float, gamma: float) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.float64)
    base = 4.0 * math.pi**2 * rho**2
    return (1.0 + base) ** (-t / 2.0) * (1.0 + np.log1p(base)) ** (-gamma / 2.0)


def h_kernel(t: float, gamma: float, grid: Grid) -> SampledField:
    if not (t > 0 and gamma > 0):
        raise ParameterError(f"need t, gamma > 0, got t={t}, gamma={gamma}")
    return radial_field(grid, lambda rho: h_profile(rho, t, gamma))


def window(N: int, grid: Grid) -> SampledField:
    """Phi_N(x) = eta(|x| / N)."""
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")
    if N > grid.half_width:
        raise ParameterError(f"window radius N = {N} exceeds the half-width {grid.half_width}")
    return radial_field(grid, lambda rho: cutoff_profile(rho / N))


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d (2 for d = 1)."""
    return 2.0 * math.pi ** (d / 2.0) / special.gamma(d / 2.0)


def radial_integral(
    profile: Profile, d: int, r_max: float, breakpoints: Sequence[float] = ()
) -> QuadratureResult:
    """omega_{d-1} int_0^{r_max} profile(r) r^{d-1} dr by adaptive quadrature on doubling panels."""
    if r_max <= 0:
        raise ParameterError(f"r_max must be positive, got {r_max}")
    edges = [0.0, min(1.0, r_max)]
    while edges[-1] < r_max:
        edges.append(min(2.0 * edges[-1], r_max))
    edges = sorted(set(edges) | {b for b in breakpoints if 0 < b < r_max})

    total, error = 0.0, 0.0
    for a, b in zip(edges, edges[1:]):
        value, err = sp_integrate.quad(
            lambda r: float(profile(np.asarray(r))) * r ** (d - 1),
            a,
            b,
            epsabs=0.0,
            epsrel=1e-12,
            limit=200,
        )
        total += value
        error += err
    omega = sphere_area(d)
    return QuadratureResult(value=omega * total, abs_error_estimate=omega * error, estimated=True)


def _gauss_panels(lo: float, hi: float, panel: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    count = max(1, int(math.ceil((hi - lo) / panel)))
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, count + 1)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    points = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return points, weights


def radial_fourier_transform(
    profile: Profile,
    d: int,
    rho: np.ndarray,
    support: tuple[float, float],
    *,
    panel: float = _PANEL_WIDTH,
    nodes: int = _PANEL_NODES,
) -> np.ndarray:
    """Fourier transform of x -> profile(|x|) on R^d at radii ``rho``.

    2 pi rho^{1 - d/2} int profile(r) J_{d/2-1}(2 pi rho r) r^{d/2} dr, with
    2 int profile(r) cos(2 pi rho r) dr for d = 1. ``support`` bounds the
    radii where the profile is nonzero.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    r, w = _gauss_panels(support[0], support[1], panel, nodes)
    f = profile(r) * w
    out = np.empty(rho.shape)
    # rows of the kernel matrix per block
    block = max(1, 2**22 // len(r))
    flat_rho = rho.ravel()
    flat_out = out.ravel()
    for start in range(0, len(flat_rho), block):
        chunk = flat_rho[start : start + block]
        z = 2.0 * math.pi * np.outer(chunk, r)
        if d == 1:
            flat_out[start : start + block] = 2.0 * (np.cos(z) @ f)
            continue
        nu = d / 2.0 - 1.0
        kernel = special.jv(nu, z) * r ** (d / 2.0)
        values = 2.0 * math.pi * (kernel @ f)
        safe = np.where(chunk > 0, chunk, 1.0)
        values = values * safe ** (1.0 - d / 2.0)
        at_zero = chunk == 0
        if np.any(at_zero):
            values[at_zero] = sphere_area(d) * float((r ** (d - 1)) @ f)
        flat_out[start : start + block] = values
    return flat_out.reshape(rho.shape)


def windowed_kernel_profile(t: float, gamma: float, N: int) -> Profile:
    return lambda r: h_profile(r, t, gamma) * cutoff_profile(np.asarray(r) / N)


@cached(LRUCache(maxsize=64))
def _tabulated_transform(t: float, gamma: float, d: int, N: int) -> CubicSpline:
    values = radial_fourier_transform(
        windowed_kernel_profile(t, gamma, N), d, _TABLE_RADII, (0.0, float(N))
    )
    logger.debug("kernel_tabulated", t=t, gamma=gamma, d=d, N=N)
    return CubicSpline(_TABLE_RADII, values)


def windowed_kernel_transform(t: float, gamma: float, d: int, N: int) -> Profile:
    """(H Phi_N)^ as a function of |xi|, valid on the tabulated annulus."""
    spline = _tabulated_transform(float(t), float(gamma), int(d), int(N))

    def transform(rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=np.float64)
        out = np.zeros_like(rho)
        inside = (rho >= _TABLE_RADII[0]) & (rho <= _TABLE_RADII[-1])
        out[inside] = spline(rho[inside])
        return out

    return transform


def gamma_hat(rho: np.ndarray) -> np.ndarray:
    return plateau_profile(rho, *GAMMA_ANNULUS)


def _closed_form_symbol(params: SharpnessParams, N: int):
    transform = windowed_kernel_transform(params.t, params.gamma, params.dim, N)

    def fn(xi: tuple[np.ndarray, ...]) -> np.ndarray:
        rho = total_radius(xi)
        return gamma_hat(rho) * transform(rho)

    return fn


def _check_annulus_resolution(grid: Grid) -> None:
    width = GAMMA_ANNULUS[3] - GAMMA_ANNULUS[0]
    cells = width / grid.freq_spacing
    if cells < 8:
        raise ResolutionError(
            f"the Gamma annulus spans {cells:.2f} frequency cells, need at least 8"
        )
    if grid.nyquist < GAMMA_ANNULUS[3]:
        raise ResolutionError(f"Nyquist frequency {grid.nyquist} is below the annulus")


def counterexample_symbol(
    params: SharpnessParams,
    N: int,
    fam: LPFamily,
    grid: Grid,
    method: Literal["closed", "fft"] = "closed",
) -> MultiplierSymbol:
    """sigma^(N) on the frequency points of an (m n)-dim grid."""
    if grid.dim != params.dim:
        raise GridError(f"grid must be {params.dim}-dim, got {grid.dim}")
    if fam.m != params.m or fam.n != params.n:
        raise ParameterError("family and parameters disagree on (m, n)")
    _check_annulus_resolution(grid)
    fn = _closed_form_symbol(params, N)

    if method == "closed":
        values = fn(grid.mesh("frequency"))
    elif method == "fft":
        windowed = h_kernel(params.t, params.gamma, grid).values * window(N, grid).values
        spectrum = forward_transform(SampledField(grid=grid, values=windowed))
        values = np.real(spectrum.values) * gamma_hat(grid.radius("frequency"))
    else:
        raise ParameterError(f"unknown method {method!r}")

    return MultiplierSymbol(
        m=params.m,
        n=params.n,
        grid=grid,
        values=np.array(np.broadcast_to(values, grid.shape), dtype=np.complex128),
        closed_form=fn,
        support_hint=(GAMMA_ANNULUS[0], GAMMA_ANNULUS[3]),
    )


def theta_hat_profile(m: int) -> Profile:
    center = 1.0 / math.sqrt(m)
    half_width = 0.001 / math.sqrt(m)
    return lambda rho: smooth_bump((np.asarray(rho, dtype=np.float64) - center) / half_width)


def theta_profile(m: int, n: int) -> Profile:
    """theta(|x|), the inverse transform of the thin radial bump theta^."""
    center = 1.0 / math.sqrt(m)
    half_width = 0.001 / math.sqrt(m)
    if n == 1:
        # theta(x) = 2 w cos(2 pi c x) int bump(u) cos(2 pi w u x) du
        u, w = _gauss_panels(-1.0, 1.0, 0.5, 32)
        bump = smooth_bump(u) * w

        def theta(r: np.ndarray) -> np.ndarray:
            r = np.asarray(r, dtype=np.float64)
            flat = r.ravel()
            envelope = np.empty(flat.shape)
            block = max(1, 2**22 // len(u))
            for start in range(0, len(flat), block):
                chunk = flat[start : start + block]
                envelope[start : start + block] = np.cos(
                    2.0 * math.pi * half_width * np.outer(chunk, u)
                ) @ bump
            carrier = np.cos(2.0 * math.pi * center * flat)
            return (2.0 * half_width * carrier * envelope).reshape(r.shape)

        return theta

    support = (center - half_width, center + half_width)
    profile = theta_hat_profile(m)
    return lambda r: radial_fourier_transform(
        profile, n, r, support, panel=half_width / 4, nodes=32
    )


def test_functions(
    epsilon: float, p_js: Sequence[float], grid: Grid, m: int
) -> list[SampledField]:
    """f_j(x) = epsilon^{n/p_j} theta(epsilon x), one per exponent."""
    if not 0 < epsilon < 0.01:
        raise ParameterError(f"need 0 < epsilon < 1/100, got {epsilon}")
    if epsilon < 8.0 * grid.spacing / grid.half_width:
        raise ResolutionError(
            f"epsilon = {epsilon} is below the resolvable limit "
            f"{8.0 * grid.spacing / grid.half_width:.3g} of the grid"
        )
    if len(p_js) != m:
        raise ParameterError(f"need {m} exponents, got {len(p_js)}")
    n = grid.dim
    theta = theta_profile(m, n)
    base = theta(epsilon * grid.radius())
    return [
        SampledField(grid=grid, values=epsilon ** (n / pj) * base, space="physical")
        for pj in p_js
    ]


def test_function_norms(
    epsilons: Sequence[float], p_js: Sequence[float], grid: Grid, m: int
) -> dict[float, list[float]]:
    """||f_j^(eps)||_{L^{p_j}} per epsilon; invariant in epsilon up to domain truncation."""
    out = {}
    for eps in epsilons:
        fields = test_functions(eps, p_js, grid, m)
        out[eps] = [lp_norm(f, pj) for f, pj in zip(fields, p_js)]
    return out


def epsilon_stability(norms: dict[float, list[float]]) -> float:
    """Largest relative change between the two smallest epsilon values."""
    small = sorted(norms)[:2]
    if len(small) < 2:
        raise ParameterError("need at least two epsilon values")
    a, b = norms[small[0]], norms[small[1]]
    return max(abs(x - y) / max(abs(x), 1e-300) for x, y in zip(a, b))


def kernel_identity_check(params: SharpnessParams, N: int, grid: Grid) -> float:
    """Relative gap in T_{sigma^(N)}(theta, ..., theta) = (H Phi_N * theta^{(x)m})(x, ..., x).

    The inputs carry theta^ exactly on the grid modes; their joint support
    sits where Gamma^ = 1, so both sides are sums over the same modes.
    """
    if grid.dim != params.n:
        raise GridError(f"input grid must be {params.n}-dim")
    m = params.m
    profile = theta_hat_profile(m)
    spectrum = profile(grid.radius("frequency"))
    if not np.any(spectrum):
        raise ResolutionError("grid has no frequency mode on the support of theta^")
    theta = inverse_transform(SampledField(grid=grid, values=spectrum, space="frequency"))
    fields = [theta] * m

    sigma_fn = _closed_form_symbol(params, N)
    transform = windowed_kernel_transform(params.t, params.gamma, params.dim, N)

    def kernel_fn(xi: tuple[np.ndarray, ...]) -> np.ndarray:
        return transform(total_radius(xi))

    # only the closed forms are evaluated, so the (m n)-dim grid is never allocated
    sym_grid = Grid(
        dim=params.dim, half_width=grid.half_width, points_per_axis=grid.points_per_axis
    )
    lhs = apply_sparse(
        MultiplierSymbol(m=m, n=params.n, grid=sym_grid, closed_form=sigma_fn),
        *fields,
    ).output.values
    rhs = apply_sparse(
        MultiplierSymbol(m=m, n=params.n, grid=sym_grid, closed_form=kernel_fn),
        *fields,
    ).output.values
    scale = max(float(np.abs(rhs).max(initial=0.0)), 1e-300)
    return float(np.abs(lhs - rhs).max(initial=0.0)) / scale


def upper_bound(params: SharpnessParams, N: int, sym_grid: Grid) -> float:
    """max_{k in -1..1} ||sigma^(N)(2^k .) Psi^(m)||_{L^{r,q}_s}, on the symbol grid."""
    fn = _closed_form_symbol(params, N)
    idx = SobolevIndex(s=params.s, p=params.r, q=params.q)
    return max(lorentz_sobolev_norm(symbol_field(fn, k, sym_grid), idx) for k in DILATIONS)


def lower_bound(params: SharpnessParams, N: int) -> QuadratureResult:
    """||H Phi_N||_{L^1} by radial quadrature."""
    profile = windowed_kernel_profile(params.t, params.gamma, N)
    return radial_integral(profile, params.dim, float(N), breakpoints=(N / 2.0,))


def sweep(
    params: SharpnessParams, N_values: Sequence[int], fam: LPFamily, sym_grid: Grid
) -> SweepCurve:
    if fam.m != params.m or fam.n != params.n:
        raise ParameterError("family and parameters disagree on (m, n)")
    if sym_grid.dim != params.dim:
        raise GridError(f"symbol grid must be {params.dim}-dim")
    upper, lower = [], []
    for N in N_values:
        upper.append(upper_bound(params, N, sym_grid))
        lower.append(float(lower_bound(params, N).value))
        logger.info("sweep_point", regime=params.regime, N=N, upper=upper[-1], lower=lower[-1])
    return SweepCurve(N_values=tuple(N_values), upper=tuple(upper), lower=tuple(lower))


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    design = np.stack([x, np.ones_like(x)], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[0])


def raw_growth_exponent(curve: SweepCurve) -> float:
    """Least-squares slope of log(lower) against log N over the top half of the sweep."""
    half = len(curve.N_values) // 2
    N = np.asarray(curve.N_values[half:], dtype=np.float64)
    lower = np.asarray(curve.lower[half:])
    return _slope(np.log(N), np.log(lower))


def corrected_growth_exponent(curve: SweepCurve, gamma: float) -> float:
    """Slope of the increments D_i with (1 + 2 ln(2 pi N))^{-gamma/2} divided out."""
    N = np.asarray(curve.N_values, dtype=np.float64)
    lower = np.asarray(curve.lower)
    increments = np.diff(lower)
    if np.any(increments <= 0):
        raise ParameterError("increments must be positive for the growth fit")
    anchor = N[1:]
    corrected = increments / (1.0 + 2.0 * np.log(2.0 * math.pi * anchor)) ** (-gamma / 2.0)
    return _slope(np.log(anchor), np.log(corrected))


def log_slope(curve: SweepCurve) -> float:
    """Slope of lower against ln N."""
    N = np.asarray(curve.N_values, dtype=np.float64)
    return _slope(np.log(N), np.asarray(curve.lower))


def loglog_exponent(curve: SweepCurve) -> float:
    """Exponent of lower against ln N; (ln N)^{1 - gamma/2} growth in the critical case."""
    N = np.asarray(curve.N_values, dtype=np.float64)
    return _slope(np.log(np.log(N)), np.log(np.asarray(curve.lower)))


def saturation(curve: SweepCurve) -> float:
    """Relative change of lower over the last step."""
    a, b = curve.lower[-2], curve.lower[-1]
    return abs(b - a) / max(abs(b), 1e-300)


def sweep_verdict(params: SharpnessParams, curve: SweepCurve) -> SweepVerdict:
    band = curve.upper_band_ratio
    regime = params.regime
    if regime == "case1":
        exponent = corrected_growth_exponent(curve, params.gamma)
        target = params.dim - params.t
        passed = band <= UPPER_BAND and abs(exponent - target) <= FIT_TOLERANCE * target
    elif regime == "case2":
        exponent = log_slope(curve)
        increasing = all(b > a for a, b in zip(curve.lower, curve.lower[1:]))
        passed = band <= UPPER_BAND and exponent > 0 and increasing
    else:
        exponent = saturation(curve)
        passed = band <= UPPER_BAND and exponent < SATURATION_TOLERANCE
    return SweepVerdict(
        regime=regime, upper_band_ratio=band, lower_fit_exponent=exponent, passed=passed
    )


def write_sweep_csv(curve: SweepCurve, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["N", "upper", "lower"])
        for row in zip(curve.N_values, curve.upper, curve.lower):
            writer.writerow([row[0], repr(float(row[1])), repr(float(row[2]))])
    return path


def write_sweep_verdict(verdict: SweepVerdict, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = verdict.model_dump(by_alias=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def _fit_power_log(radii: np.ndarray, logs: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Least squares for log v = alpha log R + beta log(logs) + c."""
    design = np.stack([np.log(radii), np.log(logs), np.ones_like(radii)], axis=1)
    coef, *_ = np.linalg.lstsq(design, np.log(values), rcond=None)
    return float(coef[0]), float(coef[1])


def _decide(alpha: float, beta: float) -> bool:
    if abs(alpha) > 0.02:
        return alpha < 0
    return beta < -1.0


def classify_kernel_lr(
    t: float, gamma: float, r: float, d: int, shells: Sequence[int] = tuple(range(10, 61, 2))
) -> PhasePoint:
    """Finiteness of ||H||_{L^r(R^d)} from the growth of its dyadic-shell contributions."""
    log_omega = math.log(sphere_area(d))
    contributions, radii = [], []
    for j in shells:
        lo = 2.0**j
        # integrate over u = r / 2^j with the power of 2^j pulled out to stay in range
        def shell(u: float, lo=lo) -> float:
            rr = lo * u
            return float(h_profile(np.asarray(rr), t, gamma)) ** r * (rr / lo) ** (d - 1)

        value, _ = sp_integrate.quad(shell, 1.0, 2.0, epsabs=0.0, epsrel=1e-12)
        contributions.append(math.log(value) + d * math.log(lo) + log_omega)
        radii.append(lo)
    radii = np.asarray(radii)
    logs = 1.0 + np.log1p(4.0 * math.pi**2 * radii**2)
    alpha, beta = _fit_power_log(radii, logs, np.exp(np.asarray(contributions) - contributions[0]))
    expected = t > d / r or (math.isclose(t, d / r) and gamma > 2.0 / r)
    return PhasePoint(
        t=t, gamma=gamma, r=r, fitted_power=alpha, fitted_log=beta,
        finite=_decide(alpha, beta), expected_finite=expected,
    )


def kernel_transform_1d(t: float, gamma: float, rho: float) -> float:
    """H^(rho) in one dimension as an oscillatory integral (Fourier weight quadrature)."""
    if rho <= 0:
        raise ParameterError("rho must be positive")
    value, _ = sp_integrate.quad(
        lambda u: float(h_profile(np.asarray(u / rho), t, gamma)),
        0.0,
        np.inf,
        weight="cos",
        wvar=2.0 * math.pi,
        limlst=200,
    )
    return 2.0 * value / rho


def classify_transform_lorentz(
    t: float, gamma: float, r: float, q: float, shells: Sequence[int] = tuple(range(4, 31))
) -> PhasePoint:
    """Finiteness of ||H^||_{L^{r,q}(R)} from its small-frequency shells.

    H^ is radially decreasing near the origin, so on the shell around rho_j
    the rearrangement is H^(rho_j) at measure 2 rho_j and the shell adds
    (2 rho_j)^{q/r} |H^(rho_j)|^q to the q-th power of the norm.
    """
    d = 1
    radii, values = [], []
    for j in shells:
        rho = 2.0**-j
        g = abs(kernel_transform_1d(t, gamma, rho))
        values.append((2.0 * rho**d) ** (q / r) * g**q)
        radii.append(1.0 / rho)
    radii = np.asarray(radii)
    logs = 1.0 + 2.0 * np.log(radii)
    alpha, beta = _fit_power_log(radii, logs, np.asarray(values))
    t0 = d - d / r
    expected = t > t0 or (math.isclose(t, t0) and gamma > 2.0 / q)
    return PhasePoint(
        t=t, gamma=gamma, r=r, fitted_power=alpha, fitted_log=beta,
        finite=_decide(alpha, beta), expected_finite=expected,
    )


def phase_diagram_lr(d: int) -> list[PhasePoint]:
    """(t, gamma, r) grid around the critical line t = d/r, gamma = 2/r."""
    points = []
    for r in (1.0, 1.5, 2.0):
        for tm in (0.7, 0.9, 1.0, 1.1, 1.3):
            for gm in (0.5, 1.5, 3.0):
                points.append(classify_kernel_lr(tm * d / r, gm * 2.0 / r, r, d))
    return points


def phase_diagram_transform(q: float = 2.0) -> list[PhasePoint]:
    """(t, gamma, r) grid around t = 1 - 1/r, gamma = 2/q in one dimension."""
    points = []
    for r in (1.5, 2.0, 4.0):
        t0 = 1.0 - 1.0 / r
        for tm in (0.7, 0.9, 1.0, 1.1, 1.3):
            for gm in (0.5, 1.5, 3.0):
                points.append(classify_transform_lorentz(tm * t0, gm * 2.0 / q, r, q))
    return points


def kernel_asymptotics(
    t: float,
    gamma: float,
    large: Sequence[float] = (1.5, 2.0, 3.0, 4.0, 6.0, 8.0),
    small: Sequence[float] = tuple(np.geomspace(1e-3, 1e-2, 6)),
) -> KernelAsymptotics:
    """Decay of H^ above |xi| = 1 and its |xi|^{t-1}(1 + 2 ln 1/|xi|)^{-gamma/2} profile below."""
    if not 0 < t < 1:
        raise ParameterError(f"one-dimensional asymptotics need 0 < t < 1, got {t}")
    decay = [abs(kernel_transform_1d(t, gamma, rho)) * math.exp(rho / 2.0) for rho in large]
    coarse = decay[: max(1, len(decay) // 2 + 1)]
    ratios = []
    for rho in small:
        model = rho ** (t - 1.0) * (1.0 + 2.0 * math.log(1.0 / rho)) ** (-gamma / 2.0)
        ratios.append(abs(kernel_transform_1d(t, gamma, rho)) / model)
    return KernelAsymptotics(
        decay_constant=max(decay),
        decay_constant_coarse=max(coarse),
        ratio_lo=min(ratios),
        ratio_hi=max(ratios),
    )

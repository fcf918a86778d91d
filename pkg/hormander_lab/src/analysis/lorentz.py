"""Distribution functions, decreasing rearrangements and Lorentz quasi-norms.

Sampled fields are step functions (constant on cells of measure h^d, or
(1/2L)^d for frequency-space fields), so f* is a finite step function and
every Lorentz integral is evaluated in closed form step by step.
"""

import csv
import math
from pathlib import Path

import numpy as np

from hormander_lab.src.analysis.field_core import (
    forward_transform,
    integrate,
    inverse_transform,
    lp_norm,
)
from hormander_lab.src.models.fields import SampledField
from hormander_lab.src.models.indices import InequalityCheck, LorentzIndex, Rearrangement
from hormander_lab.src.utils.errors import GridError, ParameterError
from hormander_lab.src.utils.logging import get_logger
from hormander_lab.src.utils.summation import stable_sum

logger = get_logger(__name__)


def cell_measure(f: SampledField) -> float:
    return f.grid.cell_measure if f.space == "physical" else f.grid.freq_cell_measure


def _total_measure(f: SampledField) -> float:
    return f.grid.samples * cell_measure(f)


def conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def distribution_function(f: SampledField, s: float) -> float:
    if s < 0:
        raise ParameterError(f"level s must be nonnegative, got {s}")
    count = int(np.count_nonzero(np.abs(f.values) > s))
    return count * cell_measure(f)


def decreasing_rearrangement(f: SampledField) -> Rearrangement:
    mag = np.abs(f.values).ravel()
    # stable sort on the negated magnitudes keeps ties in linear-index order
    order = np.argsort(-mag, kind="stable")
    ranked = mag[order]
    ranked = ranked[ranked > 0]
    mu = cell_measure(f)

    if ranked.size == 0:
        return Rearrangement(
            breakpoints=np.zeros(1), levels=np.zeros(0), total_measure=_total_measure(f)
        )

    starts = np.concatenate(([0], np.nonzero(np.diff(ranked))[0] + 1))
    levels = ranked[starts]
    ends = np.append(starts[1:], ranked.size)
    breakpoints = np.concatenate(([0.0], ends * mu))
    return Rearrangement(
        breakpoints=breakpoints, levels=levels.copy(), total_measure=_total_measure(f)
    )


def _power_increments(breakpoints: np.ndarray, exponent: float) -> np.ndarray:
    """t_i^a - t_{i-1}^a without cancellation between neighbouring breakpoints."""
    lo = breakpoints[:-1]
    width = np.diff(breakpoints)
    out = np.empty_like(width)
    first = lo == 0
    out[first] = width[first] ** exponent
    rest = ~first
    out[rest] = lo[rest] ** exponent * np.expm1(exponent * np.log1p(width[rest] / lo[rest]))
    return out


def rearrangement_norm(rearrangement: Rearrangement, idx: LorentzIndex) -> float:
    p, q = idx.p, idx.q
    if math.isinf(p) and not math.isinf(q):
        raise ParameterError("L^{inf,q} with q < inf is not admitted")
    levels = rearrangement.levels
    if levels.size == 0:
        return 0.0
    if math.isinf(p):
        return float(levels[0])
    if math.isinf(q):
        # sup of t^{1/p} v on [t_{i-1}, t_i) is approached at t_i
        right = rearrangement.breakpoints[1:]
        return float(np.max(right ** (1.0 / p) * levels))

    increments = _power_increments(rearrangement.breakpoints, q / p)
    total = stable_sum(levels**q * increments) * (p / q)
    return float(total) ** (1.0 / q)


def lorentz_norm(f: SampledField, idx: LorentzIndex) -> float:
    if math.isinf(idx.p) and not math.isinf(idx.q):
        raise ParameterError("L^{inf,q} with q < inf is not admitted")
    return rearrangement_norm(decreasing_rearrangement(f), idx)


def holder_pairing(f: SampledField, g: SampledField, idx: LorentzIndex) -> InequalityCheck:
    p, q = idx.p, idx.q
    if not (1 < p < math.inf) or not (1 <= q <= math.inf):
        raise ParameterError(f"Hölder pairing needs 1 < p < inf and 1 <= q <= inf, got {idx}")
    if f.grid != g.grid:
        raise GridError("Hölder pairing needs fields on one grid")
    lhs = integrate(f.with_values(np.abs(f.values * g.values))).value
    dual = LorentzIndex(p=conjugate_exponent(p), q=conjugate_exponent(q))
    rhs = lorentz_norm(f, idx) * lorentz_norm(g, dual)
    return InequalityCheck(lhs=float(np.real(lhs)), rhs=rhs)


def nesting_constant(p: float, q_small: float, q_large: float) -> float:
    """C with ||f||_{p,q_large} <= C ||f||_{p,q_small} for q_small <= q_large."""
    if q_small > q_large:
        raise ParameterError("nesting needs q_small <= q_large")
    if math.isinf(q_small):
        return 1.0
    inv_large = 0.0 if math.isinf(q_large) else 1.0 / q_large
    return (q_small / p) ** (1.0 / q_small - inv_large)


def convolve(f: SampledField, g: SampledField) -> SampledField:
    """Periodic convolution with the continuous normalisation, computed spectrally."""
    if f.grid != g.grid:
        raise GridError("convolution needs fields on one grid")
    F = forward_transform(f)
    G = forward_transform(g)
    return inverse_transform(F.with_values(F.values * G.values))


def young_exponent(p: float, q: float) -> float:
    """r with 1/r + 1 = 1/p + 1/q."""
    inv_r = 1.0 / p + 1.0 / q - 1.0
    if not 0 < inv_r < 1:
        raise ParameterError(f"no admissible r for p={p}, q={q}")
    return 1.0 / inv_r


def young_check(
    f: SampledField, g: SampledField, p: float, q: float, t: float
) -> InequalityCheck:
    """||f*g||_{L^{r,t}} against ||f||_{L^{p,t}} ||g||_{L^q}."""
    if not (1 < p < math.inf and 1 < q < math.inf) or not t > 0:
        raise ParameterError(f"Young needs 1 < p, q < inf and t > 0, got p={p}, q={q}, t={t}")
    r = young_exponent(p, q)
    lhs = lorentz_norm(convolve(f, g), LorentzIndex(p=r, q=t))
    rhs = lorentz_norm(f, LorentzIndex(p=p, q=t)) * lp_norm(g, q)
    return InequalityCheck(lhs=lhs, rhs=rhs)


def hausdorff_young_check(f: SampledField, p: float, r: float) -> InequalityCheck:
    """||f^||_{L^{p,r}} (frequency cells) against ||f||_{L^{p',r}}, for 2 < p < inf."""
    if not 2 < p < math.inf or not r > 0:
        raise ParameterError(f"Hausdorff-Young needs 2 < p < inf and r > 0, got p={p}, r={r}")
    lhs = lorentz_norm(forward_transform(f), LorentzIndex(p=p, q=r))
    rhs = lorentz_norm(f, LorentzIndex(p=conjugate_exponent(p), q=r))
    return InequalityCheck(lhs=lhs, rhs=rhs)


def write_rearrangement_csv(rearrangement: Rearrangement, path: str | Path) -> Path:
    """Two columns (breakpoint, level); the last row closes the support with level 0."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["breakpoint", "level"])
        for t, v in zip(rearrangement.breakpoints[:-1], rearrangement.levels):
            writer.writerow([repr(float(t)), repr(float(v))])
        writer.writerow([repr(float(rearrangement.breakpoints[-1])), "0.0"])
    logger.info("rearrangement_written", path=str(path), steps=rearrangement.steps)
    return path

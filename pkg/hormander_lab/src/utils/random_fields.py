"""Seeded random inputs for the property experiments.

Streams are Philox generators keyed by (seed, versioned stream name), so a
named stream draws the same numbers regardless of what other streams did.
Band-limited fields draw one coefficient per frequency mode of the band in
a fixed order that depends on (L, band) only; the same function therefore
comes out on every resolution M that contains the band.
"""

import hashlib
import itertools

import numpy as np
from scipy import fft as sp_fft

from hormander_lab.src.models.fields import Grid, SampledField
from hormander_lab.src.utils.errors import AliasingError, ParameterError

GENERATOR_VERSION = "philox-1"


def named_rng(seed: int, stream: str) -> np.random.Generator:
    digest = hashlib.blake2b(f"{GENERATOR_VERSION}:{stream}".encode(), digest_size=8).digest()
    key = ((int(seed) & (2**64 - 1)) << 64) | int.from_bytes(digest, "little")
    return np.random.Generator(np.random.Philox(key=key))


def _mode_range(grid: Grid, band: float) -> np.ndarray:
    kmax = int(np.floor(band / grid.freq_spacing + 1e-9))
    if kmax >= grid.points_per_axis // 2:
        raise AliasingError(
            f"band {band} reaches the Nyquist frequency {grid.nyquist} of the grid"
        )
    return np.arange(-kmax, kmax + 1)


def band_limited_field(
    grid: Grid,
    rng: np.random.Generator,
    band: float,
    *,
    real: bool = False,
    annulus: tuple[float, float] | None = None,
) -> SampledField:
    """Random trigonometric polynomial with modes |xi_i| <= band per axis.

    With ``annulus=(lo, hi)`` only modes with lo <= |xi| <= hi are kept.
    """
    if not band > 0:
        raise ParameterError(f"band must be positive, got {band}")
    modes = _mode_range(grid, band)
    center = grid.points_per_axis // 2
    spectrum = np.zeros(grid.shape, dtype=np.complex128)

    mode_list = list(itertools.product(modes, repeat=grid.dim))
    draws = rng.standard_normal((len(mode_list), 2))
    coeff = (draws[:, 0] + 1j * draws[:, 1]) / np.sqrt(2.0 * len(mode_list))
    for index, c in zip(mode_list, coeff):
        if annulus is not None:
            radius = grid.freq_spacing * float(np.sqrt(sum(int(k) ** 2 for k in index)))
            if not annulus[0] <= radius <= annulus[1]:
                continue
        spectrum[tuple(center + int(k) for k in index)] = c

    physical = _synthesize(grid, spectrum)
    if real:
        physical = physical.real.astype(np.complex128)
    return SampledField(grid=grid, values=physical, space="physical")


def white_noise_field(grid: Grid, rng: np.random.Generator) -> SampledField:
    draws = rng.standard_normal((grid.samples, 2))
    values = (draws[:, 0] + 1j * draws[:, 1]).reshape(grid.shape)
    return SampledField(grid=grid, values=values, space="physical")


def _synthesize(grid: Grid, coefficients: np.ndarray) -> np.ndarray:
    """f(x) = sum_k c_k exp(2 pi i xi_k x) on the centered grid."""
    values = sp_fft.fftshift(sp_fft.ifftn(sp_fft.ifftshift(coefficients)))
    return values * grid.samples

import numpy as np
import pytest
from scipy import fft as sp_fft

from hormander_lab.src.analysis.field_core import make_grid
from hormander_lab.src.utils.errors import AliasingError, ParameterError
from hormander_lab.src.utils.random_fields import band_limited_field, named_rng, white_noise_field


def test_named_streams_are_reproducible():
    a = named_rng(3, "alpha").standard_normal(5)
    b = named_rng(3, "alpha").standard_normal(5)
    np.testing.assert_array_equal(a, b)


def test_named_streams_are_independent():
    a = named_rng(3, "alpha").standard_normal(5)
    assert not np.array_equal(a, named_rng(3, "beta").standard_normal(5))
    assert not np.array_equal(a, named_rng(4, "alpha").standard_normal(5))


def test_band_limited_field_is_resolution_independent():
    coarse = band_limited_field(make_grid(1, 4.0, 64), named_rng(1, "f"), 2.0)
    fine = band_limited_field(make_grid(1, 4.0, 128), named_rng(1, "f"), 2.0)
    np.testing.assert_allclose(fine.values[::2], coarse.values, atol=1e-12)


def test_band_limited_field_stays_in_band(line, rng):
    f = band_limited_field(line, rng, 1.0)
    spectrum = np.abs(sp_fft.fftshift(sp_fft.fftn(f.values)))
    outside = np.abs(line.freq_axis()) > 1.0 + 1e-12
    assert spectrum[outside].max() < 1e-10 * spectrum.max()


def test_annulus_removes_low_modes(line, rng):
    f = band_limited_field(line, rng, 2.0, annulus=(1.0, 2.0))
    spectrum = np.abs(sp_fft.fftshift(sp_fft.fftn(f.values)))
    inside = np.abs(line.freq_axis()) < 1.0 - 1e-12
    assert spectrum[inside].max() < 1e-10 * spectrum.max()


def test_real_field_has_no_imaginary_part(line, rng):
    f = band_limited_field(line, rng, 1.0, real=True)
    assert np.all(f.values.imag == 0.0)


def test_band_at_nyquist_is_rejected(line, rng):
    with pytest.raises(AliasingError):
        band_limited_field(line, rng, line.nyquist)


def test_nonpositive_band_is_rejected(line, rng):
    with pytest.raises(ParameterError):
        band_limited_field(line, rng, 0.0)


def test_white_noise_shape(rng):
    grid = make_grid(2, 4.0, 16)
    assert white_noise_field(grid, rng).values.shape == (16, 16)

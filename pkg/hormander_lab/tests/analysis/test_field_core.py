import numpy as np
import pytest

from hormander_lab.src.analysis.field_core import (
    diagonal_restrict,
    field_from_function,
    forward_transform,
    integrate,
    inverse_transform,
    lp_norm,
    make_grid,
    pairing,
    radial_field,
    reflect,
    sample_at,
    tensor_product,
)
from hormander_lab.src.utils.errors import GridError
from hormander_lab.src.utils.random_fields import band_limited_field, named_rng, white_noise_field


def gaussian(grid):
    return radial_field(grid, lambda r: np.exp(-np.pi * r**2))


class TestMakeGrid:
    def test_rejects_bad_parameters(self):
        """Dimension, parity and width are validated before anything is allocated."""
        with pytest.raises(GridError):
            make_grid(5, 1.0, 8)
        with pytest.raises(GridError):
            make_grid(1, 1.0, 9)
        with pytest.raises(GridError):
            make_grid(1, 0.0, 8)

    def test_sample_cap(self):
        """2^28 samples exceed the default cap of 2^26."""
        with pytest.raises(GridError, match="exceeds the cap"):
            make_grid(2, 1.0, 2**14)


def test_parseval(line, rng):
    f = white_noise_field(line, rng)
    assert lp_norm(forward_transform(f), 2) == pytest.approx(lp_norm(f, 2), rel=1e-12)


def test_transform_round_trip(line, rng):
    f = white_noise_field(line, rng)
    back = inverse_transform(forward_transform(f))
    np.testing.assert_allclose(back.values, f.values, atol=1e-12)
    assert back.space == "physical"


def test_gaussian_is_its_own_transform(line):
    F = forward_transform(gaussian(line))
    expected = np.exp(-np.pi * line.freq_axis() ** 2)
    np.testing.assert_allclose(F.values, expected, atol=1e-12)


def test_transform_checks_space(line):
    F = forward_transform(gaussian(line))
    with pytest.raises(GridError):
        forward_transform(F)
    with pytest.raises(GridError):
        inverse_transform(gaussian(line))


def test_reflect(line):
    f = field_from_function(line, lambda x: x)
    x = line.axis()
    g = reflect(f)
    np.testing.assert_array_equal(g.values[1:].real, -x[1:])
    # -L is its own mirror image on the periodic grid
    assert g.values[0] == f.values[0]


def test_tensor_product_and_diagonal(rng):
    grid = make_grid(1, 4.0, 16)
    f, g = white_noise_field(grid, rng), white_noise_field(grid, rng)
    F = tensor_product(f, g)
    assert F.grid.dim == 2
    assert F.values[3, 5] == f.values[3] * g.values[5]
    np.testing.assert_array_equal(diagonal_restrict(F, 2).values, f.values * g.values)


def test_tensor_product_dimension_cap(rng):
    grid = make_grid(2, 4.0, 8)
    f = white_noise_field(grid, rng)
    with pytest.raises(GridError):
        tensor_product(f, f, f)


def test_diagonal_needs_divisible_dimension(rng):
    F = white_noise_field(make_grid(3, 4.0, 8), rng)
    with pytest.raises(GridError):
        diagonal_restrict(F, 2)


def test_gaussian_integral(line):
    result = integrate(gaussian(line))
    assert result.value == pytest.approx(1.0, abs=1e-12)
    assert not result.estimated


def test_integral_error_estimate(line):
    fine = make_grid(1, 16.0, 512)
    result = integrate(gaussian(line), refined=gaussian(fine))
    assert result.estimated
    assert result.abs_error_estimate < 1e-12


def test_lp_norms(line):
    f = field_from_function(line, lambda x: np.where(np.abs(x) < 1, 2.0, 0.0))
    # 15 samples of value 2 at spacing 1/8
    assert lp_norm(f, np.inf) == 2.0
    assert lp_norm(f, 1) == pytest.approx(2.0 * 15 / 8, rel=1e-14)
    assert lp_norm(f, 2) == pytest.approx(np.sqrt(4.0 * 15 / 8), rel=1e-14)


def test_pairing_is_bilinear(line, rng):
    f, g = white_noise_field(line, rng), white_noise_field(line, rng)
    expected = np.sum(f.values * g.values) * line.spacing
    assert pairing(f, g) == pytest.approx(expected, rel=1e-12)


def test_sample_at_matches_finer_grid():
    coarse = band_limited_field(make_grid(1, 4.0, 64), named_rng(2, "interp"), 2.0)
    fine_grid = make_grid(1, 4.0, 128)
    fine = band_limited_field(fine_grid, named_rng(2, "interp"), 2.0)
    midpoints = fine_grid.axis()[1::2, None]
    np.testing.assert_allclose(sample_at(coarse, midpoints), fine.values[1::2], atol=1e-10)


def test_sample_at_checks_coordinates(line, rng):
    with pytest.raises(GridError):
        sample_at(white_noise_field(line, rng), np.zeros((3, 2)))

import json

import numpy as np
import pytest
from pydantic import ValidationError

from hormander_lab.src.analysis import littlewood_paley as lp
from hormander_lab.src.analysis.field_core import forward_transform, make_grid
from hormander_lab.src.models.families import PARTITION_TOLERANCE, LPFamily
from hormander_lab.src.models.symbols import MultiplierSymbol
from hormander_lab.src.utils.errors import GridError, ParameterError, ResolutionError
from hormander_lab.src.utils.random_fields import band_limited_field


class TestFamily:
    def test_certificate(self):
        fam = lp.build_family(2, 1, (-3, 3))
        assert fam.partition_defect <= PARTITION_TOLERANCE
        assert fam.low_defect <= PARTITION_TOLERANCE
        assert fam.guard_band == (0.25, 4.0)
        assert list(fam.window) == list(range(-3, 4))

    @pytest.mark.parametrize("m, shift", [(1, 5), (2, 6), (3, 6), (4, 7)])
    def test_low_shift(self, m, shift):
        assert lp.build_family(m, 1, (-2, 2)).low_shift == shift

    def test_narrow_window_rejected(self):
        with pytest.raises(ParameterError):
            lp.build_family(2, 1, (0, 1))
        with pytest.raises(ValidationError):
            LPFamily(m=1, n=1, k_min=0, k_max=1, partition_defect=0.0, low_defect=0.0)

    def test_window_must_fit_the_grid(self):
        """The top of the window must stay below Nyquist and the bottom above one cell."""
        grid = make_grid(1, 4.0, 32)
        with pytest.raises(ResolutionError):
            lp.build_family(1, 1, (-2, 3), grid)
        with pytest.raises(ResolutionError):
            lp.build_family(1, 1, (-4, 1), grid)
        with pytest.raises(GridError):
            lp.build_family(2, 1, (-2, 1), make_grid(3, 4.0, 8))

    def test_bins_sum_to_one_inside_window(self):
        fam = lp.build_family(1, 1, (-3, 3))
        rho = np.concatenate([[0.0], np.geomspace(1e-3, 8.0, 500)])
        total = sum(fam.bins(rho).values())
        np.testing.assert_allclose(total, 1.0, atol=1e-12)

    def test_write_family(self, tmp_path):
        fam = lp.build_family(2, 1, (-3, 3))
        path = lp.write_family(fam, make_grid(1, 4.0, 64), tmp_path)
        sidecar = json.loads(path.read_text())
        assert sidecar["window"] == [-3, 3]
        assert set(sidecar["annuli"]) == {"psi", "Psi_m", "Theta_m", "Gamma", "Lambda_m", "phi"}
        assert (tmp_path / "psi.hlab").is_file()


@pytest.fixture
def random_symbol(rng) -> MultiplierSymbol:
    grid = make_grid(2, 1.0, 64)
    return MultiplierSymbol(m=2, n=1, grid=grid, values=rng.standard_normal(grid.shape))


class TestDecompose:
    window = (-1, 4)

    def test_matches_brute_force(self, random_symbol):
        """Telescoped regrouping agrees with enumerating every index pair."""
        fam = lp.build_family(2, 1, self.window, random_symbol.grid)
        fast = lp.decompose(random_symbol, fam)
        slow = lp.brute_force_decompose(random_symbol, fam)
        for a, b in zip(fast.parts, slow.parts):
            np.testing.assert_allclose(a, b, atol=1e-12)
        np.testing.assert_allclose(fast.high, slow.high, atol=1e-12)
        np.testing.assert_allclose(fast.low, slow.low, atol=1e-12)

    def test_reconstruction(self, random_symbol):
        """Parts add back up to sigma and the first part splits into low + high."""
        fam = lp.build_family(2, 1, self.window, random_symbol.grid)
        parts = lp.decompose(random_symbol, fam)
        np.testing.assert_allclose(parts.reconstruction(), random_symbol.values, atol=1e-9)
        np.testing.assert_allclose(parts.low + parts.high, parts.parts[0], atol=1e-12)
        assert parts.k_window == self.window

    def test_tie_terms(self, random_symbol):
        fam = lp.build_family(2, 1, self.window, random_symbol.grid)
        assert lp.tie_residual(random_symbol, fam) <= 1e-12 * random_symbol.max_abs()

    def test_support_beyond_window(self, random_symbol):
        fam = lp.build_family(2, 1, (-1, 2), random_symbol.grid)
        with pytest.raises(ResolutionError):
            lp.decompose(random_symbol, fam)


def test_band_projection(line, rng):
    fam = lp.build_family(1, 1, (-3, 1))
    g = band_limited_field(line, rng, 3.0)
    spectrum = forward_transform(lp.project(g, fam, "band", 0)).values
    rho = np.abs(line.freq_axis())
    assert np.abs(spectrum[(rho <= 0.5) | (rho >= 2.0)]).max() < 1e-12
    low = forward_transform(lp.project(g, fam, "low", -1)).values
    assert np.abs(low[rho >= 1.0]).max() < 1e-12
    with pytest.raises(ParameterError):
        lp.project(g, fam, "band", 5)


def test_dilate_closed_form():
    grid = make_grid(2, 1.0, 16)

    def fn(xi):
        return np.exp(-(xi[0] ** 2 + xi[1] ** 2))

    values = np.broadcast_to(fn(grid.mesh("frequency")), grid.shape)
    sigma = MultiplierSymbol(m=2, n=1, grid=grid, values=values.copy(), closed_form=fn)
    dilated = lp.dilate_symbol(sigma, 1)
    expected = fn(tuple(2.0 * c for c in grid.mesh("frequency")))
    np.testing.assert_allclose(dilated.values, np.broadcast_to(expected, grid.shape), atol=1e-15)


def test_dilate_sampled_hits_grid_points():
    """Dilation by 2 lands every inner point on a sample, so interpolation is exact there."""
    grid = make_grid(2, 1.0, 16)
    r = grid.radius("frequency")
    sigma = MultiplierSymbol(m=2, n=1, grid=grid, values=np.exp(-(r**2)))
    dilated = lp.dilate_symbol(sigma, 1)
    inner = np.abs(grid.freq_axis()) <= 1.5
    expected = np.exp(-4.0 * r**2)
    block = np.ix_(inner, inner)
    np.testing.assert_allclose(dilated.values[block], expected[block], atol=1e-14)
    assert dilated.interpolation_error > 0


def test_reassembly_ratio_rejects_negative_spread(line, rng):
    fam = lp.build_family(1, 1, (-3, 1))
    gs = {k: band_limited_field(line, rng, 1.0) for k in (-2, -1)}
    with pytest.raises(ParameterError):
        lp.reassembly_ratio(gs, fam, -1, 2.0, 2.0)
    assert lp.reassembly_ratio(gs, fam, 1, 2.0, 2.0) > 0

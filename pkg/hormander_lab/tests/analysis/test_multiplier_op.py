import math

import numpy as np
import pytest

from hormander_lab.src.analysis import multiplier_op as op
from hormander_lab.src.analysis.field_core import lp_norm, make_grid
from hormander_lab.src.analysis.littlewood_paley import build_family
from hormander_lab.src.models.indices import SobolevIndex
from hormander_lab.src.models.symbols import MultiplierSymbol
from hormander_lab.src.utils.errors import AliasingError, BudgetError, ParameterError
from hormander_lab.src.utils.random_fields import band_limited_field, white_noise_field
from hormander_lab.src.utils.settings import LabSettings, get_setting


@pytest.fixture
def small():
    """1-dim grid with 32 points on [-4, 4) and its 2-dim symbol grid."""
    return make_grid(1, 4.0, 32), make_grid(2, 4.0, 32)


@pytest.fixture
def wide():
    """64 points on [-8, 8); the alias-safe band for m = 2 is 1/2."""
    return make_grid(1, 8.0, 64), make_grid(2, 8.0, 64)


def test_alias_band(small):
    grid, _ = small
    assert op.alias_band(grid, 2) == 0.5
    assert op.alias_band(grid, 1) == 1.0


class TestApply:
    def test_unit_symbol_is_the_product(self, small, rng):
        grid, sym = small
        f, g = band_limited_field(grid, rng, 0.5), band_limited_field(grid, rng, 0.5)
        unit = MultiplierSymbol(m=2, n=1, grid=sym, values=np.ones(sym.shape))
        out = op.apply(unit, f, g).output
        np.testing.assert_allclose(out.values, f.values * g.values, atol=1e-12)

    def test_modulation_translates(self, small, rng):
        """exp(2 pi i (a xi_1 + b xi_2)) shifts the inputs by a and b."""
        grid, sym = small
        a, b = 3 * grid.spacing, -5 * grid.spacing
        xi1, xi2 = sym.mesh("frequency")
        values = np.exp(2j * np.pi * (a * xi1 + b * xi2))
        sigma = MultiplierSymbol(m=2, n=1, grid=sym, values=values)
        f, g = band_limited_field(grid, rng, 0.5), band_limited_field(grid, rng, 0.5)
        out = op.apply(sigma, f, g).output
        expected = np.roll(f.values, -3) * np.roll(g.values, 5)
        np.testing.assert_allclose(out.values, expected, atol=1e-12)

    def test_direct_oracle(self, small, rng):
        grid, sym = small
        f, g = band_limited_field(grid, rng, 0.5), band_limited_field(grid, rng, 0.5)
        values = rng.standard_normal(sym.shape)
        sigma = MultiplierSymbol(m=2, n=1, grid=sym, values=values)
        result = op.apply(sigma, f, g, check_direct=True)
        assert result.checked
        assert result.residual <= 1e-8

    def test_rejects_aliasing_input(self, small, rng):
        grid, sym = small
        unit = MultiplierSymbol(m=2, n=1, grid=sym, values=np.ones(sym.shape))
        f = band_limited_field(grid, rng, 1.0)
        with pytest.raises(AliasingError):
            op.apply(unit, f, f)

    def test_rejects_wrong_arity(self, small, rng):
        grid, sym = small
        unit = MultiplierSymbol(m=2, n=1, grid=sym, values=np.ones(sym.shape))
        with pytest.raises(ParameterError):
            op.apply(unit, band_limited_field(grid, rng, 0.5))

    def test_direct_budget(self, small, rng, monkeypatch):
        grid, sym = small
        monkeypatch.setattr(get_setting(LabSettings), "direct_term_budget", 100)
        unit = MultiplierSymbol(m=2, n=1, grid=sym, values=np.ones(sym.shape))
        f = band_limited_field(grid, rng, 0.5)
        with pytest.raises(BudgetError):
            op.apply_direct(unit, f, f)


def test_sparse_matches_spectral(wide, rng):
    grid, sym = wide
    sigma = op.random_dyadic_symbol(2, 1, sym, rng)
    f, g = band_limited_field(grid, rng, 0.5), band_limited_field(grid, rng, 0.5)
    spectral = op.apply(sigma, f, g).output.values
    sparse = op.apply_sparse(sigma, f, g).output.values
    np.testing.assert_allclose(sparse, spectral, atol=1e-10)


def test_sparse_needs_closed_form(wide, rng):
    grid, sym = wide
    sigma = MultiplierSymbol(m=2, n=1, grid=sym, values=np.ones(sym.shape))
    f = band_limited_field(grid, rng, 0.5)
    with pytest.raises(ParameterError):
        op.apply_sparse(sigma, f, f)


class TestTranspose:
    def test_involution_on_samples(self, wide, rng):
        """Transposing twice in the same slot returns the original samples."""
        _, sym = wide
        dyadic = op.random_dyadic_symbol(2, 1, sym, rng)
        sampled = MultiplierSymbol(m=2, n=1, grid=sym, values=dyadic.values)
        for j in (1, 2):
            twice = op.transpose_symbol(op.transpose_symbol(sampled, j), j)
            np.testing.assert_array_equal(twice.values, sampled.values)

    def test_closed_form_agrees_with_index_map(self, wide, rng):
        _, sym = wide
        dyadic = op.random_dyadic_symbol(2, 1, sym, rng)
        sampled = MultiplierSymbol(m=2, n=1, grid=sym, values=dyadic.values)
        np.testing.assert_allclose(
            op.transpose_symbol(dyadic, 1).values,
            op.transpose_symbol(sampled, 1).values,
            atol=1e-12,
        )

    def test_escaping_support(self, small):
        _, sym = small
        unit = MultiplierSymbol(m=2, n=1, grid=sym, values=np.ones(sym.shape))
        with pytest.raises(AliasingError):
            op.transpose_symbol(unit, 1)

    @pytest.mark.parametrize("j", [1, 2])
    def test_duality(self, wide, rng, j):
        grid, sym = wide
        sigma = op.random_dyadic_symbol(2, 1, sym, rng)
        f, g, h = (band_limited_field(grid, rng, 0.5) for _ in range(3))
        assert op.duality_residual(sigma, [f, g], h, j) <= 1e-8

    def test_slot_range(self, wide, rng):
        _, sym = wide
        sigma = op.random_dyadic_symbol(2, 1, sym, rng)
        with pytest.raises(ParameterError):
            op.transpose_symbol(sigma, 3)


def test_coordinate_map_is_an_involution(rng):
    F = white_noise_field(make_grid(2, 8.0, 32), rng)
    for j in (1, 2):
        once = op.coordinate_map(F, 2, j)
        np.testing.assert_array_equal(op.coordinate_map(once, 2, j).values, F.values)
        assert lp_norm(once, 2) == lp_norm(F, 2)


def test_lambda_inclusion():
    geometry = op.lambda_inclusion(2, 1, 1)
    golden = (1 + math.sqrt(5)) / 2
    assert geometry.singular_max == pytest.approx(golden, rel=1e-12)
    assert geometry.singular_min == pytest.approx(1 / golden, rel=1e-12)
    assert geometry.included
    assert op.lambda_inclusion(1, 2, 1).included


def test_symbol_grid_respects_sample_cap():
    assert op.symbol_grid(2, 1, 256).points_per_axis == 256
    assert op.symbol_grid(4, 1, 256).points_per_axis == 64
    assert op.symbol_grid(1, 1).half_width == get_setting(LabSettings).symbol_half_width


def test_random_dyadic_symbol_support(wide, rng):
    _, sym = wide
    sigma = op.random_dyadic_symbol(2, 1, sym, rng, ks=(-3, -2))
    assert sigma.support_hint == (0.0, 0.5)
    assert np.all(sigma.values[sym.radius("frequency") >= 0.5] == 0)


def test_localize(wide, rng):
    _, sym = wide
    fam = build_family(2, 1, (-6, 0))
    sigma = op.random_dyadic_symbol(2, 1, sym, rng)
    local = op.localize(sigma, fam, -4)
    assert np.all(local.values[sym.radius("frequency") >= 8 * math.sqrt(2) / 16] == 0)


def test_transfer_ratio_needs_closed_form(wide):
    _, sym = wide
    sigma = MultiplierSymbol(m=2, n=1, grid=sym, values=np.zeros(sym.shape))
    with pytest.raises(ParameterError):
        op.transfer_ratio(sigma, 1, SobolevIndex(s=1.0, p=2.0, q=1.0), (0,), sym)


def test_domination_parameter_range(wide, rng):
    grid, sym = wide
    sigma = op.random_dyadic_symbol(2, 1, sym, rng)
    f = band_limited_field(grid, rng, 0.5)
    with pytest.raises(ParameterError):
        op.pointwise_domination_check(sigma, [f, f], q=2.0, s=0.9, sample_points=[(0, 0)], k=0)
    with pytest.raises(ParameterError):
        op.pointwise_domination_check(sigma, [f, f], q=1.5, s=1.3, sample_points=[(0, 0)], k=0)

import json
import math

import numpy as np
import pytest

from hormander_lab.experiments.presets import CASE1, CASE2, CONTROL
from hormander_lab.src.analysis import sharpness
from hormander_lab.src.analysis.field_core import make_grid
from hormander_lab.src.analysis.littlewood_paley import build_family
from hormander_lab.src.analysis.multiplier_op import symbol_field
from hormander_lab.src.models.sharpness import SweepCurve
from hormander_lab.src.utils.errors import ParameterError, ResolutionError


def gaussian(r):
    return np.exp(-np.pi * np.asarray(r) ** 2)


def test_h_profile_at_origin():
    assert sharpness.h_profile(np.array([0.0]), 1.9, 1.0)[0] == 1.0
    with pytest.raises(ParameterError):
        sharpness.h_kernel(0.0, 1.0, make_grid(1, 4.0, 16))


def test_window(line):
    phi = sharpness.window(4, line)
    r = np.abs(line.axis())
    assert np.all(phi.values[r <= 2.0] == 1.0)
    assert np.all(phi.values[r >= 4.0] == 0.0)
    with pytest.raises(ParameterError):
        sharpness.window(32, line)
    with pytest.raises(ParameterError):
        sharpness.window(0, line)


@pytest.mark.parametrize("d, area", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi)])
def test_sphere_area(d, area):
    assert sharpness.sphere_area(d) == pytest.approx(area, rel=1e-14)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_radial_integral_of_gaussian(d):
    result = sharpness.radial_integral(gaussian, d, 10.0)
    assert result.value == pytest.approx(1.0, rel=1e-10)
    assert result.estimated


@pytest.mark.parametrize("d", [1, 2, 3])
def test_radial_fourier_transform_of_gaussian(d):
    rho = np.array([0.0, 0.25, 0.5, 1.0])
    values = sharpness.radial_fourier_transform(gaussian, d, rho, (0.0, 6.0))
    np.testing.assert_allclose(values, gaussian(rho), atol=1e-12)


def test_lower_bound_grows_with_the_window():
    small = sharpness.lower_bound(CASE1, 16).value
    large = sharpness.lower_bound(CASE1, 32).value
    assert 0 < small < large


def test_short_sweep():
    fam = build_family(2, 1, (-3, 3))
    curve = sharpness.sweep(CASE1, (16, 32), fam, make_grid(2, 2.5, 64))
    assert curve.N_values == (16, 32)
    assert all(u > 0 for u in curve.upper)
    assert curve.lower[0] < curve.lower[1]


def _case1_curve() -> SweepCurve:
    """Lower bound whose increments follow N^(d - t) times the log factor exactly."""
    N = np.array([16, 32, 64, 128, 256], dtype=float)
    increments = N**0.1 * (1.0 + 2.0 * np.log(2.0 * math.pi * N)) ** (-0.5)
    lower = 1.0 + np.concatenate([[0.0], np.cumsum(increments[1:])])
    return SweepCurve(
        N_values=(16, 32, 64, 128, 256), upper=(1.0, 1.1, 1.2, 1.1, 1.0), lower=tuple(lower)
    )


class TestVerdict:
    def test_case1_growth(self):
        """The corrected increments recover the exponent d - t."""
        curve = _case1_curve()
        assert sharpness.corrected_growth_exponent(curve, 1.0) == pytest.approx(0.1, abs=1e-9)
        assert sharpness.sweep_verdict(CASE1, curve).passed

    def test_case1_upper_band(self):
        """An upper curve that drifts more than the band fails."""
        curve = _case1_curve().model_copy(update={"upper": (1.0, 1.0, 1.0, 1.0, 1.5)})
        assert not sharpness.sweep_verdict(CASE1, curve).passed

    def test_case2_needs_growth(self):
        growing = SweepCurve(N_values=(16, 32, 64), upper=(1.0,) * 3, lower=(1.0, 1.2, 1.3))
        flat = SweepCurve(N_values=(16, 32, 64), upper=(1.0,) * 3, lower=(1.0, 1.0, 1.0))
        assert sharpness.sweep_verdict(CASE2, growing).passed
        assert not sharpness.sweep_verdict(CASE2, flat).passed

    def test_control_saturates(self):
        saturated = SweepCurve(N_values=(16, 32, 64), upper=(1.0,) * 3, lower=(1.0, 2.0, 2.001))
        growing = SweepCurve(N_values=(16, 32, 64), upper=(1.0,) * 3, lower=(1.0, 2.0, 3.0))
        verdict = sharpness.sweep_verdict(CONTROL, saturated)
        assert verdict.passed
        assert verdict.regime == "control"
        assert not sharpness.sweep_verdict(CONTROL, growing).passed

    def test_exponent_fits(self):
        N = (16, 32, 64, 128)
        power = SweepCurve(N_values=N, upper=(1.0,) * 4, lower=tuple(n**0.5 for n in N))
        loglog = SweepCurve(
            N_values=N, upper=(1.0,) * 4, lower=tuple(math.log(n) ** 0.25 for n in N)
        )
        assert sharpness.raw_growth_exponent(power) == pytest.approx(0.5, rel=1e-10)
        assert sharpness.loglog_exponent(loglog) == pytest.approx(0.25, rel=1e-10)


def test_sweep_outputs(tmp_path):
    curve = _case1_curve()
    csv_path = sharpness.write_sweep_csv(curve, tmp_path / "sweep.csv")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "N,upper,lower"
    assert len(lines) == 6
    verdict_path = sharpness.write_sweep_verdict(
        sharpness.sweep_verdict(CASE1, curve), tmp_path / "verdict.json"
    )
    payload = json.loads(verdict_path.read_text())
    assert payload["pass"] is True
    assert payload["regime"] == "case1"


def test_symbol_needs_a_fine_annulus():
    fam = build_family(2, 1, (-3, 3))
    with pytest.raises(ResolutionError):
        sharpness.counterexample_symbol(CASE1, 16, fam, make_grid(2, 2.5, 64))


@pytest.mark.parametrize("k", [-3, -2, 2, 3])
def test_counterexample_vanishes_off_three_dilations(k):
    """sigma^(N)(2^k .) Psi^ is identically zero unless -1 <= k <= 1."""
    fn = sharpness._closed_form_symbol(CASE1, 16)
    assert abs(fn((np.array([1.0]), np.array([0.0])))[0]) > 0
    field = symbol_field(fn, k, make_grid(2, 2.5, 64))
    assert np.all(field.values == 0)

def test_test_function_limits(line):
    with pytest.raises(ParameterError):
        sharpness.test_functions(0.02, (4.0, 4.0), line, 2)
    with pytest.raises(ResolutionError):
        sharpness.test_functions(0.001, (4.0, 4.0), line, 2)


def test_epsilon_stability():
    norms = {0.004: [1.0, 2.0], 0.001: [1.0, 2.0], 0.002: [1.1, 2.0]}
    assert sharpness.epsilon_stability(norms) == pytest.approx(0.1)
    with pytest.raises(ParameterError):
        sharpness.epsilon_stability({0.001: [1.0]})


@pytest.mark.parametrize("t, finite", [(1.3, True), (0.7, False)])
def test_kernel_lr_classification(t, finite):
    point = sharpness.classify_kernel_lr(t, 1.0, 1.0, 1)
    assert point.finite is finite
    assert point.agrees


def test_kernel_transform_needs_positive_radius():
    with pytest.raises(ParameterError):
        sharpness.kernel_transform_1d(0.5, 1.0, 0.0)
    with pytest.raises(ParameterError):
        sharpness.kernel_asymptotics(1.5, 1.0)

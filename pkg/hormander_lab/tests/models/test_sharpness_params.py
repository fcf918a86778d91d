import math

import pytest
from pydantic import ValidationError

from hormander_lab.experiments.presets import CASE1, CASE2, CONTROL
from hormander_lab.src.models.sharpness import SharpnessParams, SweepCurve


@pytest.mark.parametrize(
    "params, regime", [(CASE1, "case1"), (CASE2, "case2"), (CONTROL, "control")]
)
def test_presets_classify(params, regime):
    assert params.regime == regime


def test_mixed_regime_rejected():
    with pytest.raises(ValidationError, match="none of the sharpness regimes"):
        SharpnessParams(**{**CASE1.model_dump(), "t": 1.5})


def test_smoothness_below_dimension():
    with pytest.raises(ValidationError):
        SharpnessParams(**{**CONTROL.model_dump(), "s": 2.0})


def test_one_exponent_per_slot():
    with pytest.raises(ValidationError):
        SharpnessParams(**{**CONTROL.model_dump(), "p_js": (2.0,)})


def test_overall_exponent():
    assert CONTROL.p == 2.0


def test_sweep_curve_lower_bound_monotone():
    with pytest.raises(ValidationError):
        SweepCurve(N_values=(16, 32), upper=(1.0, 1.0), lower=(2.0, 1.0))
    with pytest.raises(ValidationError):
        SweepCurve(N_values=(32, 16), upper=(1.0, 1.0), lower=(1.0, 2.0))


def test_sweep_curve_band():
    curve = SweepCurve(N_values=(16, 32, 64), upper=(1.0, 1.2, 1.1), lower=(1.0, 2.0, 3.0))
    assert math.isclose(curve.upper_band_ratio, 1.2)

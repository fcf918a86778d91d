import pytest

from hormander_lab.experiments import scenarios
from hormander_lab.experiments.metrics import MetricLog
from hormander_lab.experiments.presets import RunConfig
from hormander_lab.experiments.runner import run, scenario_for


def _by_label(metrics, label):
    return next(metric for metric in metrics if metric.label == label)


def test_shifted_weight_spread_is_asserted():
    cfg = RunConfig()
    coarse, fine = scenarios._resolutions(cfg)
    log = MetricLog()
    scenarios._shifted_weight_check(cfg, log, (coarse, fine), coarse.nyquist / 4.0, 1)
    spread = _by_label(log.metrics, "shifted_weight_k_spread")
    assert spread.comparison == "le"
    assert spread.tolerance == pytest.approx(1.15)
    assert spread.value >= 1.0


def test_verify_lemmas_fails_when_profile_depends_on_k(monkeypatch):
    profile = scenarios.shifted_weight_profile
    monkeypatch.setattr(
        scenarios,
        "shifted_weight_profile",
        lambda f, x, k, s: 4.0**k * profile(f, x, k, s),
    )
    cfg = RunConfig(instances=10)
    report = run(scenario_for("verify-lemmas", cfg), cfg)
    assert _by_label(report.metrics, "shifted_weight_k_spread").verdict == "fail"
    assert not report.passed

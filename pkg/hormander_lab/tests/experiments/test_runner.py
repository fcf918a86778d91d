import pytest

from hormander_lab.experiments.emit import to_json
from hormander_lab.experiments.presets import RunConfig
from hormander_lab.experiments.runner import provenance, run, scenario_for
from hormander_lab.experiments.scenarios import SCENARIOS, describe
from hormander_lab.src.models.reports import Scenario
from hormander_lab.src.utils.errors import ScenarioError


@pytest.fixture
def cfg() -> RunConfig:
    return RunConfig(instances=200)


def test_every_scenario_is_registered():
    assert set(SCENARIOS) == {
        "verify-core",
        "verify-lorentz",
        "verify-lemmas",
        "decompose-check",
        "theorem1-ratio",
        "lemma31-check",
        "transpose-check",
        "sharpness-sweep",
        "region-check",
    }
    assert all(describe(name) for name in SCENARIOS)


def test_provenance():
    versions = provenance()
    assert versions["generator"] == "philox-1"
    assert {"hormander-lab", "numpy", "scipy", "pydantic"} <= set(versions)


def test_unknown_scenario(cfg):
    with pytest.raises(ScenarioError):
        scenario_for("verify-everything", cfg)


def test_seed_mismatch(cfg):
    with pytest.raises(ScenarioError):
        run(Scenario(name="region-check", seed=2), cfg)


def test_region_check_passes(cfg):
    report = run(scenario_for("region-check", cfg), cfg)
    assert report.passed
    labels = [metric.label for metric in report.metrics]
    assert labels[0] == "cube_membership"
    assert labels[-1] == "oracle_disagreements"
    assert report.scenario.params["instances"] == 200


def test_reports_are_reproducible(cfg):
    first = to_json(run(scenario_for("region-check", cfg), cfg))
    second = to_json(run(scenario_for("region-check", cfg), cfg))
    assert first == second

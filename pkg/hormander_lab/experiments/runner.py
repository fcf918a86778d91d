from importlib import metadata

import structlog

from hormander_lab.experiments.metrics import MetricLog
from hormander_lab.experiments.presets import RunConfig
from hormander_lab.experiments.scenarios import SCENARIOS
from hormander_lab.src.models.reports import ExperimentReport, Scenario
from hormander_lab.src.utils.errors import ScenarioError
from hormander_lab.src.utils.logging import get_logger
from hormander_lab.src.utils.random_fields import GENERATOR_VERSION

logger = get_logger(__name__)

_TRACKED = ("hormander-lab", "numpy", "scipy", "pydantic")


def provenance() -> dict[str, str]:
    """Installed versions of the package and its numerical stack; no clocks, no hosts."""
    versions = {}
    for name in _TRACKED:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    versions["generator"] = GENERATOR_VERSION
    return versions


def scenario_for(name: str, cfg: RunConfig) -> Scenario:
    if name not in SCENARIOS:
        raise ScenarioError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}")
    return Scenario(name=name, params=cfg.echo(), seed=cfg.seed)


def run(scenario: Scenario, cfg: RunConfig) -> ExperimentReport:
    """Run one scenario and assemble its report.

    Args:
        scenario: the scenario name, parameter echo and seed
        cfg: the resolved configuration the scenario reads

    Returns:
        the ExperimentReport; its verdict is the conjunction of the metric verdicts
    """
    fn = SCENARIOS.get(scenario.name)
    if fn is None:
        raise ScenarioError(f"unknown scenario {scenario.name!r}")
    if scenario.seed != cfg.seed:
        raise ScenarioError("scenario seed and configuration seed disagree")

    log = MetricLog()
    with structlog.contextvars.bound_contextvars(scenario=scenario.name, seed=scenario.seed):
        logger.info("scenario_started")
        fn(cfg, log)
        report = ExperimentReport(
            scenario=scenario,
            metrics=log.metrics,
            environment=log.environment,
            provenance=provenance(),
        )
        failed = [metric.label for metric in report.metrics if metric.verdict == "fail"]
        logger.info("scenario_finished", verdict=report.verdict, metrics=len(report.metrics))
        if failed:
            logger.warning("scenario_failed_metrics", labels=failed)
    return report

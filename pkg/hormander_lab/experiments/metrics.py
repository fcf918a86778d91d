import math
from typing import Any

from hormander_lab.src.models.reports import Comparison, Metric, Verdict
from hormander_lab.src.utils.logging import get_logger

logger = get_logger(__name__)


def relative_change(coarse: float, fine: float) -> float:
    scale = max(abs(fine), abs(coarse), 1e-300)
    return abs(fine - coarse) / scale


def _judge(value: float | bool | None, tolerance: float | None, comparison: Comparison) -> Verdict:
    if comparison == "report":
        return "report"
    if comparison == "eq":
        return "pass" if value is True else "fail"
    if value is None or tolerance is None or math.isnan(float(value)):
        return "fail"
    value = float(value)
    ok = {
        "le": value <= tolerance,
        "ge": value >= tolerance,
        "lt": value < tolerance,
        "gt": value > tolerance,
    }[comparison]
    return "pass" if ok else "fail"


class MetricLog:
    """Collects the metrics and environment echo of one scenario run, in order."""

    def __init__(self) -> None:
        self.metrics: list[Metric] = []
        self.environment: dict[str, Any] = {}

    def _record(
        self,
        label: str,
        value: float | bool | None,
        tolerance: float | None,
        comparison: Comparison,
    ) -> Metric:
        if value is not None and not isinstance(value, bool):
            value = float(value)
        metric = Metric(
            label=label,
            value=value,
            tolerance=tolerance,
            comparison=comparison,
            verdict=_judge(value, tolerance, comparison),
        )
        self.metrics.append(metric)
        if metric.verdict == "fail":
            logger.warning("metric_failed", label=label, value=value, tolerance=tolerance)
        else:
            logger.info("metric_recorded", label=label, value=value, verdict=metric.verdict)
        return metric

    def at_most(self, label: str, value: float, tolerance: float) -> Metric:
        return self._record(label, value, tolerance, "le")

    def at_least(self, label: str, value: float, tolerance: float) -> Metric:
        return self._record(label, value, tolerance, "ge")

    def below(self, label: str, value: float, tolerance: float) -> Metric:
        return self._record(label, value, tolerance, "lt")

    def above(self, label: str, value: float, tolerance: float) -> Metric:
        return self._record(label, value, tolerance, "gt")

    def holds(self, label: str, flag: bool) -> Metric:
        return self._record(label, bool(flag), None, "eq")

    def report(self, label: str, value: float | bool | None) -> Metric:
        return self._record(label, value, None, "report")

    def bounded(self, label: str, value: float) -> Metric:
        """A ratio the theory only bounds by an unknown constant: finite and positive."""
        return self._record(f"{label}_finite", math.isfinite(value) and value > 0, None, "eq")

    def refinement(self, label: str, coarse: float, fine: float, band: float) -> Metric:
        """Report both resolutions and assert their relative change stays inside ``band``."""
        self.report(f"{label}_coarse", coarse)
        self.report(f"{label}_fine", fine)
        self.bounded(label, fine)
        return self.at_most(f"{label}_refinement_change", relative_change(coarse, fine), band)

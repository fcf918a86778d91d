import csv
import io
import json
from typing import Literal

from hormander_lab.src.models.reports import ExperimentReport, Metric
from hormander_lab.src.utils.errors import ParameterError

Format = Literal["json", "csv", "human"]

CSV_COLUMNS = ("label", "value", "tolerance", "comparison", "verdict")


def _cell(value: float | bool | None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(float(value))


def to_json(report: ExperimentReport) -> bytes:
    payload = json.loads(report.model_dump_json())
    document = {
        "scenario": payload["scenario"],
        "verdict": report.verdict,
        "metrics": payload["metrics"],
        "environment": payload["environment"],
        "provenance": payload["provenance"],
    }
    return (json.dumps(document, indent=2) + "\n").encode("utf-8")


def to_csv(report: ExperimentReport) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for metric in report.metrics:
        writer.writerow(
            [
                metric.label,
                _cell(metric.value),
                _cell(metric.tolerance),
                metric.comparison,
                metric.verdict,
            ]
        )
    return buffer.getvalue().encode("utf-8")


_SYMBOLS = {"le": "<=", "ge": ">=", "lt": "<", "gt": ">", "eq": "==", "report": ""}


def _human_row(metric: Metric) -> str:
    bound = "" if metric.comparison == "report" else f"{_SYMBOLS[metric.comparison]} "
    if metric.comparison == "eq":
        bound += "true"
    elif metric.tolerance is not None:
        bound += f"{metric.tolerance:.3g}"
    if metric.value is None:
        shown = "-"
    elif isinstance(metric.value, bool):
        shown = str(metric.value).lower()
    else:
        shown = f"{metric.value:.6g}"
    return f"{metric.label:<44} {shown:>14}  {bound:<12} {metric.verdict.upper()}"


def to_human(report: ExperimentReport) -> bytes:
    lines = [
        f"scenario {report.scenario.name}  seed {report.scenario.seed}  "
        f"verdict {report.verdict.upper()}",
        "-" * 80,
    ]
    lines.extend(_human_row(metric) for metric in report.metrics)
    if not report.metrics:
        lines.append("(no metrics)")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit(report: ExperimentReport, fmt: Format = "json") -> bytes:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "human":
        return to_human(report)
    raise ParameterError(f"unknown output format {fmt!r}")

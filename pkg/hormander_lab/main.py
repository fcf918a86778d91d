import argparse
import sys
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError

from hormander_lab.experiments.emit import emit
from hormander_lab.experiments.presets import PRESETS, resolve_config
from hormander_lab.experiments.runner import run, scenario_for
from hormander_lab.experiments.scenarios import SCENARIOS, describe
from hormander_lab.src.utils.errors import LabError
from hormander_lab.src.utils.logging import configure_logging, get_logger
from hormander_lab.src.utils.settings import LabSettings, get_setting, read_config_file

load_dotenv()

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlab",
        description="Run one numerical experiment on multilinear Fourier multipliers",
    )
    parser.add_argument(
        "scenario",
        nargs="?",
        choices=sorted(SCENARIOS),
        help="Scenario to run (see --list)",
    )
    parser.add_argument("--grid-m", type=int, default=None, help="Points per axis M")
    parser.add_argument("--half-width", type=float, default=None, help="Half-width L of the cube")
    parser.add_argument("--seed", type=int, default=None, help="Seed of every random stream")
    parser.add_argument(
        "--preset",
        choices=sorted(PRESETS),
        default=None,
        help="Named parameter preset, applied before the flags",
    )
    parser.add_argument("--config", type=str, default=None, help="Key-value config file")
    parser.add_argument(
        "--out", type=str, default=None, help="Write the report here instead of stdout"
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv", "human"),
        default="json",
        help="Report format (default: json)",
    )
    parser.add_argument(
        "--dump-fields",
        action="store_true",
        help="Dump fields, families and curves next to the report",
    )
    parser.add_argument(
        "--log-level", type=str, default=None, help="structlog level (default: WARNING)"
    )
    parser.add_argument("--list", action="store_true", help="List the scenarios and exit")
    return parser


def dump_directory(out: str | None) -> Path:
    """Sibling directory of the report file, or ./hlab_fields when writing to stdout."""
    if out is None:
        return Path("hlab_fields")
    path = Path(out)
    return path.parent / f"{path.stem}_fields"


def list_scenarios() -> str:
    return "\n".join(f"{name:<18} {describe(name)}" for name in sorted(SCENARIOS)) + "\n"


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the hlab command line."""
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_setting(LabSettings)
    configure_logging(args.log_level or settings.log_level, settings.log_json)
    logger = get_logger(__name__)

    if args.list:
        sys.stdout.write(list_scenarios())
        return EXIT_PASS
    if args.scenario is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write("hlab: error: a scenario is required\n")
        return EXIT_USAGE

    try:
        file_values = read_config_file(args.config) if args.config else None
        flags = {
            "grid_m": args.grid_m,
            "half_width": args.half_width,
            "seed": args.seed,
            "dump_dir": dump_directory(args.out) if args.dump_fields else None,
        }
        cfg = resolve_config(settings, file_values, args.preset, flags)
        report = run(scenario_for(args.scenario, cfg), cfg)
        payload = emit(report, args.format)
        if args.out is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        else:
            out = Path(args.out)
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_bytes(payload)
            logger.info("report_written", path=str(out))
    except KeyboardInterrupt:
        sys.stderr.write("\nCancelled by user.\n")
        return EXIT_INTERRUPTED
    except (LabError, ValidationError, FileNotFoundError) as e:
        sys.stderr.write(f"hlab: error: {' '.join(str(e).split())}\n")
        return EXIT_USAGE

    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

#  Notch Studio - Command-Line Interface
#
#  Builds the argument parser from the command registry, sets up logging
#  and per-invocation context, runs one subcommand and maps failures to
#  exit codes. Results go to stdout as JSON; logs go to stderr.
#
#  Depends on: commands/registry.py, config.py, logging_config.py, exceptions.py
#  Used by:    run.py

import argparse
import json
import logging
import sys
import uuid

from pydantic import ValidationError

from notchstudio.commands.registry import CommandRegistry
from notchstudio.config import LOG_FORMAT, LOG_LEVEL, ConfigError, validate_config
from notchstudio.exceptions import (
    AudioFormatError,
    CoefficientFileError,
    CoefficientRangeError,
    CurveFormatError,
    DomainError,
    MeasurementError,
    NotchStudioError,
    StabilityError,
)
from notchstudio.logging_config import (
    set_command,
    set_engine,
    set_output,
    set_run_id,
    setup_logging,
)

logger = logging.getLogger("notchstudio.cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_ARGUMENT = 2
EXIT_DATA = 3
EXIT_UNSTABLE = 4

# First matching entry wins
_EXIT_CODES: list[tuple[type[Exception], int]] = [
    (ConfigError, EXIT_ARGUMENT),
    (DomainError, EXIT_ARGUMENT),
    (ValidationError, EXIT_ARGUMENT),
    (CoefficientFileError, EXIT_DATA),
    (CurveFormatError, EXIT_DATA),
    (AudioFormatError, EXIT_DATA),
    (MeasurementError, EXIT_DATA),
    (CoefficientRangeError, EXIT_DATA),
    (StabilityError, EXIT_UNSTABLE),
    (NotchStudioError, EXIT_FAILURE),
]


def exit_code_for(exc: Exception) -> int | None:
    for exc_type, code in _EXIT_CODES:
        if isinstance(exc, exc_type):
            return code
    return None


def _error_message(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return "; ".join(e["msg"] for e in exc.errors())
    return str(exc)


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="notchstudio",
        description="Notch filter design, fixed-point simulation and sound-insulation analysis",
    )
    parser.add_argument("--log-level", default=LOG_LEVEL, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--log-format", default=LOG_FORMAT, choices=["text", "json"])
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")
    for command in registry.all():
        command.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    registry = CommandRegistry()
    parser = build_parser(registry)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ARGUMENT

    setup_logging(level=args.log_level, fmt=args.log_format)
    set_command(args.subcommand)
    set_run_id(uuid.uuid4().hex[:12])
    set_output(getattr(args, "output", None))
    set_engine(getattr(args, "engine", None))

    try:
        validate_config()
        result = args.command.run(args)
    except Exception as e:
        code = exit_code_for(e)
        if code is None:
            logger.exception("Unexpected failure in %s", args.subcommand)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAILURE
        logger.debug("%s failed: %s", args.subcommand, e, exc_info=True)
        print(f"error: {_error_message(e)}", file=sys.stderr)
        return code
    finally:
        set_command(None)
        set_run_id(None)
        set_output(None)
        set_engine(None)

    print(json.dumps(result, indent=2, default=str))
    return EXIT_OK

"""Command-line entry point: `python -m stlplan <command>`."""
import argparse
import json
import sys
from typing import Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from stlplan.commands import COMMANDS
from stlplan.core.config import get_settings
from stlplan.core.errors import ConfigError, DomainError, FormulaError, NumericError, SolverError, StlPlanError
from stlplan.core.logging import configure_logging

settings = get_settings()

# Exit codes
EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def create_parser() -> argparse.ArgumentParser:
    """Build the parser and register every sub-command."""
    parser = ArgumentParser(
        prog=settings.APP_NAME,
        description="Robust planning from signal temporal logic specifications.",
    )
    parser.add_argument("--log-level", help=f"Log level (default: {settings.LOG_LEVEL})")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Register commands
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def resolve_log_level(requested: Optional[str] = None) -> str:
    """`--log-level` wins; otherwise DEBUG=true turns on debug output."""
    if requested:
        return requested
    return "DEBUG" if settings.DEBUG else settings.LOG_LEVEL


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(resolve_log_level(args.log_level), settings.LOG_FILE)

    try:
        return args.handler(args)
    except (ConfigError, DomainError, FormulaError, ValidationError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"❌ Error: {e}")
        return EXIT_INPUT
    except (NumericError, SolverError) as e:
        logger.error("{} failed: {}", args.command, e)
        print(f"❌ Numerical failure: {e}")
        return EXIT_NUMERIC
    except StlPlanError as e:
        print(f"❌ Error: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

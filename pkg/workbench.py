"""DMP workbench - command-line entry point."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import structlog
from pydantic import ValidationError

from config import RunConfig, load_run_config, settings
from src import __version__
from src.errors import InvalidInputError, NumericalError, StageError
from src.tools import RunContext, Workspace, register_tools


EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


# Configure structured logging
def configure_logging():
    """Configure structured logging with structlog; everything goes to stderr."""
    renderer = structlog.processors.JSONRenderer() if settings.log_json else structlog.dev.ConsoleRenderer()
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    # Set log level; stdout is reserved for reports
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper()),
        format="%(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmp-workbench",
        description="Distillation for membership privacy: training, attacks and analyses",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True, metavar="<subcommand>")
    register_tools(subparsers)
    return parser


def exit_code(error: BaseException) -> int:
    """Exit code of a failed subcommand; a stage error takes its cause's code."""
    if isinstance(error, StageError):
        return exit_code(error.cause)
    if isinstance(error, (NumericalError, ArithmeticError)):
        return EXIT_NUMERICAL
    return EXIT_INVALID


def build_context(args: argparse.Namespace) -> RunContext:
    """RunContext from --config/--out/--seed.

    Raises:
        ConfigError: If the config file is missing or invalid
        ValidationError: If --seed is outside [0, 2^64)
    """
    config = load_run_config(args.config)
    if args.seed is not None:
        config = RunConfig(**{**config.model_dump(), "seed": args.seed})
    root = Path(args.out) if args.out is not None else config.resolved_output_dir
    return RunContext(config=config, workspace=Workspace(root), subcommand=args.subcommand)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the DMP workbench."""
    configure_logging()
    logger = structlog.get_logger()

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_INVALID

    try:
        ctx = build_context(args)
        logger.info("Running subcommand", subcommand=args.subcommand, seed=ctx.config.seed, out=str(ctx.workspace.root))
        args.handler(ctx)
    except (InvalidInputError, ValidationError, FileNotFoundError, NumericalError, StageError, ArithmeticError) as e:
        code = exit_code(e)
        logger.error("Subcommand failed", subcommand=args.subcommand, error=str(e), exit_code=code)
        print(f"dmp-workbench {args.subcommand}: error: {e}", file=sys.stderr)
        return code
    except Exception as e:
        logger.error("Unexpected error", subcommand=args.subcommand, error=str(e), exc_info=True)
        print(f"dmp-workbench {args.subcommand}: internal error: {e}", file=sys.stderr)
        return EXIT_INVALID

    logger.info("Subcommand finished", subcommand=args.subcommand)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""``realsurf`` command: read request JSON, run it, write response JSON or text."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
import sys

from realsurf_app.constants.about import APP_ABOUT_TEXT, APP_NAME, APP_VERSION, HELP_TEXT
from realsurf_app.constants.cli_constants import (
    DEFAULT_LOG_LEVEL,
    DEFAULT_OUTPUT_FORMAT,
    EXIT_OK,
    OUTPUT_FORMATS,
    SUBCOMMANDS,
)
from realsurf_app.core.classification_manager import ClassificationManager
from realsurf_app.core.errors import ParseError, RealSurfError, SchemaError
from realsurf_app.core.models import STATUS_ERROR, ErrorInfo, Response
from realsurf_app.core.request_importer import load_json
from realsurf_app.core.response_exporter import render_responses, save_responses
from realsurf_app.utils.logging_config import configure_logging

logger = logging.getLogger(__name__)


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="realsurf",
        description=APP_ABOUT_TEXT,
        epilog=HELP_TEXT,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "subcommand",
        nargs="?",
        choices=SUBCOMMANDS,
        help="Run this subcommand; the input is then the bare payload.",
    )
    parser.add_argument("--input", dest="input_path", type=Path, help="Read the request from a file instead of stdin.")
    parser.add_argument("--output", dest="output_path", type=Path, help="Write the response to a file instead of stdout.")
    parser.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=DEFAULT_OUTPUT_FORMAT)
    parser.add_argument("--batch", action="store_true", help="The input is a JSON array of requests.")
    parser.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), default=DEFAULT_LOG_LEVEL)
    parser.add_argument("-v", "--verbose", action="store_true", help="Shortcut for --log-level DEBUG.")
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    return parser.parse_args(argv)


def _read_input(path: Path | None) -> str:
    if path is None:
        return sys.stdin.read()
    return path.read_text(encoding="utf-8")


def _error_response(subcommand: str | None, exc: RealSurfError) -> Response:
    return Response(subcommand, STATUS_ERROR, error=ErrorInfo(exc.code, str(exc)))


def run(
    text: str,
    subcommand: str | None = None,
    batch: bool = False,
    manager: ClassificationManager | None = None,
) -> list[Response]:
    """Run the request(s) in ``text``; never raises for bad input."""
    manager = manager or ClassificationManager()
    try:
        document = load_json(text)
    except RealSurfError as exc:
        return [_error_response(subcommand, exc)]
    if not batch:
        return [manager.run_document(document, subcommand)]
    if not isinstance(document, list):
        return [_error_response(subcommand, SchemaError("Batch input must be a JSON array of requests."))]
    return manager.run_batch(document, subcommand)


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    configure_logging("DEBUG" if args.verbose else args.log_level)

    try:
        text = _read_input(args.input_path)
    except OSError as exc:
        logger.error("Could not read %s: %s", args.input_path, exc)
        responses = [_error_response(args.subcommand, ParseError(f"Could not read input: {exc}"))]
    else:
        responses = run(text, args.subcommand, args.batch)

    if args.output_path is not None:
        save_responses(args.output_path, responses, args.output_format)
    else:
        sys.stdout.write(render_responses(responses, args.output_format))

    failed = next((r for r in responses if not r.ok), None)
    return EXIT_OK if failed is None else failed.exit_code


if __name__ == "__main__":
    raise SystemExit(main())

"""Argument parser implementation for the a11y-mender application."""

import argparse
from collections.abc import Sequence
from pathlib import Path

from . import config
from .enums import Category, Strategy
from .types import ArgumentParser, CommandLineArgs


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _ = common.add_argument(
        "--taxonomy",
        dest="taxonomy_path",
        type=Path,
        help="Taxonomy file (default: $A11YMENDER_TAXONOMY_PATH or the bundled one)",
    )
    _ = common.add_argument(
        "--provider",
        choices=["openai", "mock"],
        help="LLM provider (default: openai, or mock when --mock is given)",
    )
    _ = common.add_argument(
        "--mock",
        dest="mock_script",
        type=Path,
        help="Script file answering prompts for the mock provider",
    )
    _ = common.add_argument(
        "--model", help=f"Model name (default: {config.LLM_MODEL})"
    )
    _ = common.add_argument(
        "--endpoint", help=f"API base URL (default: {config.LLM_ENDPOINT})"
    )
    _ = common.add_argument(
        "--timeout", type=float, help="Request timeout in seconds"
    )
    _ = common.add_argument(
        "--parallel", type=int, help="Maximum concurrent provider requests"
    )
    _ = common.add_argument(
        "--retries", type=int, help="Retries after transient provider failures"
    )
    _ = common.add_argument(
        "-o",
        "--output",
        dest="output_path",
        type=Path,
        help="Output file (default: stdout)",
    )
    _ = common.add_argument(
        "--pretty", action="store_true", help="Indent JSON output"
    )
    _ = common.add_argument(
        "--format",
        dest="output_format",
        choices=["table", "plain", "json"],
        help="Output format for listings and summaries: table (default), plain, json",
    )
    _ = common.add_argument(
        "-v", "--verbose", action="store_true", help="Show debug messages"
    )
    return common


def _screenshot_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    _ = group.add_argument(
        "--screenshot", type=Path, help="Screenshot of the page (PNG or JPEG)"
    )
    _ = group.add_argument(
        "--no-screenshot",
        action="store_true",
        help="Run without a screenshot; semantic detection is skipped",
    )


def build_parser() -> argparse.ArgumentParser:
    """
    Build the command-line parser.

    Returns:
        The parser with one subparser per command
    """
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="a11y-mender",
        description="Detect and correct Web accessibility violations in HTML.",
    )
    _ = parser.add_argument(
        "--version",
        action="store_true",
        help="Show version information and exit",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    detect = commands.add_parser(
        "detect", parents=[common], help="Detect violations in an HTML page"
    )
    _ = detect.add_argument(
        "input_path", type=Path, help="HTML file, or - for stdin"
    )
    _ = detect.add_argument("--url", help="URL of the page")
    _ = detect.add_argument("--domain", help="Topic of the site, e.g. 'Education'")
    _screenshot_options(detect)
    _ = detect.add_argument(
        "--semantic",
        action="store_true",
        help="Also detect semantic violations with the LLM (needs --screenshot)",
    )
    _ = detect.add_argument(
        "--best-practices",
        action="store_true",
        help="Also run page-level best-practice rules",
    )
    _ = detect.add_argument(
        "--download-images",
        action="store_true",
        help="Download images referenced by semantic findings",
    )

    correct = commands.add_parser(
        "correct", parents=[common], help="Correct the violations of a report"
    )
    _ = correct.add_argument(
        "input_path", type=Path, help="Detection report, or - for stdin"
    )
    _ = correct.add_argument(
        "--strategy",
        choices=[s.value for s in Strategy],
        default=Strategy.GUIDED.value,
        help="Correction strategy (default: guided)",
    )
    _screenshot_options(correct)
    _ = correct.add_argument(
        "--semantic-recheck",
        action="store_true",
        help="Re-check semantic corrections with the LLM detector",
    )
    _ = correct.add_argument(
        "--best-practices",
        action="store_true",
        help="Count best-practice rules when scoring corrections",
    )

    apply = commands.add_parser(
        "apply", parents=[common], help="Apply a correction report to a page"
    )
    _ = apply.add_argument("input_path", type=Path, help="HTML file, or - for stdin")
    _ = apply.add_argument(
        "--corrections",
        dest="corrections_path",
        type=Path,
        required=True,
        help="Correction report",
    )

    evaluate = commands.add_parser(
        "evaluate", parents=[common], help="Compute metrics of a correction report"
    )
    _ = evaluate.add_argument("before_path", type=Path, help="Detection report")
    _ = evaluate.add_argument("after_path", type=Path, help="Correction report")

    benchmark = commands.add_parser(
        "benchmark", parents=[common], help="Run a strategy over a dataset"
    )
    _ = benchmark.add_argument(
        "input_path",
        type=Path,
        nargs="?",
        help="Dataset file (default: the bundled mini corpus)",
    )
    _ = benchmark.add_argument(
        "--strategy",
        choices=[s.value for s in Strategy],
        default=Strategy.GUIDED.value,
        help="Correction strategy (default: guided)",
    )
    _ = benchmark.add_argument(
        "--embedder",
        choices=["endpoint", "hashing", "none"],
        default="none",
        help="Embedding backend for the similarity study (default: none)",
    )
    _screenshot_options(benchmark)

    taxonomy = commands.add_parser("taxonomy", help="Inspect the violation taxonomy")
    actions = taxonomy.add_subparsers(dest="taxonomy_action", required=True)
    listing = actions.add_parser("list", parents=[common], help="List violation types")
    _ = listing.add_argument(
        "--category",
        choices=[c.value for c in Category],
        help="Only list one category",
    )
    show = actions.add_parser("show", parents=[common], help="Show one violation type")
    _ = show.add_argument("type_name", help="Violation type name")

    fetch = commands.add_parser(
        "fetch", parents=[common], help="Download a page without running scripts"
    )
    _ = fetch.add_argument("url", help="Page URL")

    return parser


class DefaultArgumentParser(ArgumentParser):
    """Default implementation of ArgumentParser using argparse."""

    def __init__(self, argv: Sequence[str] | None = None) -> None:
        self._argv = argv

    def parse_args(self) -> CommandLineArgs:
        """
        Parse command-line arguments.

        Exits with status 2 on usage errors, including ``--semantic`` without
        ``--screenshot`` or ``--no-screenshot``.

        Returns:
            CommandLineArgs containing the parsed arguments
        """
        parser = build_parser()
        args = parser.parse_args(self._argv)
        values = vars(args)

        if (
            values.get("semantic")
            and values.get("screenshot") is None
            and not values.get("no_screenshot")
        ):
            parser.error("--semantic needs --screenshot (or --no-screenshot)")
        if args.command is None and not args.version:
            parser.error("a command is required")

        # Convert argparse.Namespace to CommandLineArgs
        return CommandLineArgs(
            command=values.get("command"),
            version=bool(values.get("version")),
            input_path=values.get("input_path"),
            corrections_path=values.get("corrections_path"),
            before_path=values.get("before_path"),
            after_path=values.get("after_path"),
            output_path=values.get("output_path"),
            url=values.get("url"),
            domain=values.get("domain"),
            screenshot=values.get("screenshot"),
            no_screenshot=bool(values.get("no_screenshot")),
            semantic=bool(values.get("semantic")),
            semantic_recheck=bool(values.get("semantic_recheck")),
            best_practices=bool(values.get("best_practices")),
            download_images=bool(values.get("download_images")),
            strategy=values.get("strategy") or Strategy.GUIDED.value,
            taxonomy_path=values.get("taxonomy_path"),
            provider=values.get("provider"),
            mock_script=values.get("mock_script"),
            model=values.get("model"),
            endpoint=values.get("endpoint"),
            timeout=values.get("timeout"),
            parallel=values.get("parallel"),
            retries=values.get("retries"),
            embedder=values.get("embedder"),
            pretty=bool(values.get("pretty")),
            output_format=values.get("output_format"),
            verbose=bool(values.get("verbose")),
            taxonomy_action=values.get("taxonomy_action"),
            type_name=values.get("type_name"),
            category=values.get("category"),
        )

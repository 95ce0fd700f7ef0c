"""
Application driver for the a11y-mender command line.

This module provides ``A11yMenderApp``, which turns parsed arguments into
one of the workflows (detect, correct, apply, evaluate, benchmark, taxonomy,
fetch) and maps failures to exit codes. Providers, embedders and the HTTP
client are created through injected factories so every workflow can run
against fakes.
"""

import sys
from collections.abc import Callable
from pathlib import Path
from urllib.parse import urlparse

import httpx

from . import __version__
from .console import BeautifulConsole
from .corrector import ViolationCorrector, correct_all
from .datasets import (
    LoadedReport,
    build_report,
    dump_report,
    load_bundled_corpus,
    load_dataset,
    load_report,
    parse_report,
)
from .dom import Document, parse_document
from .enums import Category, DiscardReason, Strategy
from .errors import A11yMenderError, FetchError
from .evaluation import compare_reports, evaluate_outcomes, run_benchmark
from .gateway import LlmGateway
from .http_client import HttpxClient
from .models import DiscardRecord, EvaluationReport, ProviderConfig
from .output_writer import STDIO, ReportWriter
from .patching import CorrectionApplier
from .scoring import FragmentScorer
from .screenshots import ScreenshotRef
from .semantic_detector import SemanticDetector, SemanticFinding
from .static_detector import detect_static
from .taxonomy import TaxonomyRegistry, load_taxonomy
from .types import (
    ArgumentParser,
    CommandLineArgs,
    ConfigProvider,
    Console,
    Embedder,
    HttpClient,
    LlmProvider,
)
from .violations import DetectedViolation, PageContext

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2

MAX_REDIRECTS = 5

ProviderFactory = Callable[
    [str, ProviderConfig, Path | None, Console | None], LlmProvider
]
EmbedderFactory = Callable[[str, ProviderConfig], Embedder | None]


def _discard_record(finding: SemanticFinding) -> DiscardRecord:
    return DiscardRecord(
        snippet=finding.snippet.text,
        violation_name=finding.violation_name,
        reason=finding.discard_reason or DiscardReason.MALFORMED_MARKERS,
    )


def _document_order(doc: Document, violations: list[DetectedViolation]) -> None:
    positions = doc.positions()

    def position(v: DetectedViolation) -> int:
        node = v.affected[0].node
        return positions.get(id(node.resolve()), -1) if node is not None else -1

    violations.sort(key=position)


class A11yMenderApp:
    """Main application class for a11y-mender."""

    arg_parser: ArgumentParser
    config_provider: ConfigProvider
    provider_factory: ProviderFactory
    embedder_factory: EmbedderFactory
    http_client: HttpClient
    _args: CommandLineArgs | None
    _console: BeautifulConsole
    _writer: ReportWriter

    def __init__(
        self,
        arg_parser: ArgumentParser,
        config_provider: ConfigProvider,
        provider_factory: ProviderFactory,
        embedder_factory: EmbedderFactory,
        *,
        http_client: HttpClient | None = None,
        console: BeautifulConsole | None = None,
    ):
        """
        Initialize the application.

        Args:
            arg_parser: The argument parser to use
            config_provider: The configuration provider to use
            provider_factory: Factory creating the LLM provider by name
            embedder_factory: Factory creating the embedder by name
            http_client: HTTP client for fetch and image downloads
            console: Console instance to use (defaults to global console)
        """
        self.arg_parser = arg_parser
        self.config_provider = config_provider
        self.provider_factory = provider_factory
        self.embedder_factory = embedder_factory
        self.http_client = http_client or HttpxClient()
        self._args = None
        if console is None:
            from .console import console as default_console

            self._console = default_console
        else:
            self._console = console
        self._writer = ReportWriter(self._console)

    # ------------------------------------------------------------------
    # Shared helpers
    # ------------------------------------------------------------------
    def _provider_config(self, args: CommandLineArgs) -> ProviderConfig:
        base = self.config_provider.get_provider_config()
        overrides = {
            "endpoint": args.endpoint,
            "model": args.model,
            "timeout": args.timeout,
            "max_parallel": args.parallel,
            "retries": args.retries,
        }
        return base.model_copy(
            update={k: v for k, v in overrides.items() if v is not None}
        )

    def _load_registry(
        self, args: CommandLineArgs
    ) -> tuple[TaxonomyRegistry | None, int | None]:
        path = args.taxonomy_path or self.config_provider.get_taxonomy_path()
        self._console.debug(f"Taxonomy: {path}")
        try:
            registry = load_taxonomy(path)
        except A11yMenderError as e:
            self._console.exception("Cannot load taxonomy", e)
            return None, EXIT_ERROR
        return registry, None

    def _read_text(self, path: Path | None) -> tuple[str | None, int | None]:
        if path is None:
            self._console.error("No input given")
            return None, EXIT_ERROR
        try:
            if path == STDIO:
                return sys.stdin.read(), None
            raw = path.read_bytes()
        except OSError as e:
            self._console.exception(f"Cannot read {path}", e)
            return None, EXIT_ERROR
        return raw.decode("utf-8", errors="replace"), None

    def _base_dir(self, path: Path | None) -> Path | None:
        if path is None or path == STDIO:
            return None
        return path.resolve().parent

    def _gateway(
        self, args: CommandLineArgs, provider_config: ProviderConfig
    ) -> LlmGateway:
        name = args.provider or ("mock" if args.mock_script else "openai")
        provider = self.provider_factory(
            name, provider_config, args.mock_script, self._console
        )
        self._console.debug(f"Provider: {name} ({provider.name})")
        return LlmGateway(
            provider,
            max_parallel=provider_config.max_parallel,
            retries=provider_config.retries,
            console=self._console,
        )

    def _write_report(self, payload: str, args: CommandLineArgs) -> None:
        self._writer.write_text(payload, args.output_path)

    def _write_metrics(self, report: EvaluationReport, args: CommandLineArgs) -> None:
        self._write_report(dump_report(report, pretty=args.pretty), args)
        if args.output_path is not None and args.output_path != STDIO:
            self._writer.display_metrics(report, args.output_format)

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------
    def _detect(self, args: CommandLineArgs, registry: TaxonomyRegistry) -> int:
        text, exit_code = self._read_text(args.input_path)
        if text is None:
            return exit_code or EXIT_ERROR
        doc = parse_document(text, base_url=args.url or "")
        ctx = PageContext(url=args.url or "", domain=args.domain or "")
        violations = detect_static(
            doc, ctx, registry, include_best_practices=args.best_practices
        )
        self._console.debug(f"Static rules found {len(violations)} violations")
        discarded: list[DiscardRecord] = []
        if args.semantic and args.no_screenshot:
            self._console.warning("Semantic detection skipped without a screenshot")
        elif args.semantic and args.screenshot is not None:
            detector = SemanticDetector(
                self._gateway(args, self._provider_config(args)),
                registry,
                download_images=args.download_images,
                http_client=self.http_client,
                console=self._console,
            )
            result = detector.detect(doc, ScreenshotRef(args.screenshot), ctx)
            violations.extend(result.violations)
            _document_order(doc, violations)
            discarded = [_discard_record(f) for f in result.discarded]
        source = "" if args.input_path in (None, STDIO) else str(args.input_path)
        report = build_report(violations, source=source, discarded=discarded)
        self._write_report(dump_report(report, pretty=args.pretty), args)
        if violations:
            self._console.info(f"{len(violations)} violations found", title="detect")
            return EXIT_FINDINGS
        self._console.success("No violations found", title="detect")
        return EXIT_OK

    def _correct(self, args: CommandLineArgs, registry: TaxonomyRegistry) -> int:
        text, exit_code = self._read_text(args.input_path)
        if text is None:
            return exit_code or EXIT_ERROR
        loaded = parse_report(text, registry, base_dir=self._base_dir(args.input_path))
        provider_config = self._provider_config(args)
        gateway = self._gateway(args, provider_config)
        recheck = None
        if args.semantic_recheck:
            detector = SemanticDetector(
                gateway, registry, http_client=self.http_client, console=self._console
            )
            recheck = detector.recheck
        scorer = FragmentScorer(
            registry,
            include_best_practices=args.best_practices,
            semantic_recheck=recheck,
        )
        corrector = ViolationCorrector(
            registry,
            gateway,
            scorer,
            screenshot=ScreenshotRef(args.screenshot) if args.screenshot else None,
            console=self._console,
        )
        outcomes = correct_all(
            loaded.violations,
            corrector,
            Strategy(args.strategy),
            max_workers=provider_config.max_parallel,
        )
        report = build_report(
            loaded.violations,
            source=loaded.source,
            outcomes=outcomes,
            discarded=loaded.discarded,
        )
        self._write_report(dump_report(report, pretty=args.pretty), args)
        fixed = sum(1 for o in outcomes if not o.flags.not_fixed)
        self._console.info(
            f"{fixed} of {len(outcomes)} violations corrected "
            f"with {gateway.call_count} LLM calls",
            title="correct",
        )
        return EXIT_OK

    def _load_corrections(
        self, path: Path | None, registry: TaxonomyRegistry
    ) -> tuple[LoadedReport | None, int | None]:
        if path is None:
            self._console.error("No correction report given")
            return None, EXIT_ERROR
        try:
            return load_report(path, registry), None
        except OSError as e:
            self._console.exception(f"Cannot read {path}", e)
            return None, EXIT_ERROR

    def _apply(self, args: CommandLineArgs, registry: TaxonomyRegistry) -> int:
        text, exit_code = self._read_text(args.input_path)
        if text is None:
            return exit_code or EXIT_ERROR
        loaded, exit_code = self._load_corrections(args.corrections_path, registry)
        if loaded is None:
            return exit_code or EXIT_ERROR
        outcomes = [
            loaded.outcomes[v.id] for v in loaded.violations if v.id in loaded.outcomes
        ]
        doc = parse_document(text)
        result = CorrectionApplier(self._console).apply(doc, outcomes)
        self._writer.write_text(result.document.serialize(), args.output_path)
        self._console.info(
            f"{len(result.applied)} corrections applied, "
            f"{len(result.warnings)} warnings",
            title="apply",
        )
        return EXIT_OK

    def _evaluate(self, args: CommandLineArgs, registry: TaxonomyRegistry) -> int:
        before, exit_code = self._load_corrections(args.before_path, registry)
        if before is None:
            return exit_code or EXIT_ERROR
        after, exit_code = self._load_corrections(args.after_path, registry)
        if after is None:
            return exit_code or EXIT_ERROR
        outcomes = compare_reports(
            before.violations, after.outcomes, console=self._console
        )
        self._write_metrics(evaluate_outcomes(outcomes), args)
        return EXIT_OK

    def _benchmark(self, args: CommandLineArgs, registry: TaxonomyRegistry) -> int:
        if args.input_path is None:
            dataset = load_bundled_corpus(registry)
        else:
            try:
                dataset = load_dataset(args.input_path, registry)
            except OSError as e:
                self._console.exception(f"Cannot read {args.input_path}", e)
                return EXIT_ERROR
        self._console.debug(f"Dataset: {len(dataset)} entries ({dataset.provenance})")
        provider_config = self._provider_config(args)
        report, _ = run_benchmark(
            dataset,
            Strategy(args.strategy),
            self._gateway(args, provider_config),
            registry,
            scorer=FragmentScorer(registry),
            embedder=self.embedder_factory(args.embedder or "none", provider_config),
            screenshot=ScreenshotRef(args.screenshot) if args.screenshot else None,
            max_workers=provider_config.max_parallel,
            console=self._console,
        )
        self._write_metrics(report, args)
        return EXIT_OK

    def _taxonomy(self, args: CommandLineArgs, registry: TaxonomyRegistry) -> int:
        if args.taxonomy_action == "show":
            spec = registry.lookup(args.type_name or "")
            self._writer.display_type(spec, registry, args.output_format)
            return EXIT_OK
        category = Category(args.category) if args.category else None
        self._writer.display_taxonomy(registry.list_types(category), args.output_format)
        return EXIT_OK

    def _fetch(self, args: CommandLineArgs) -> int:
        url = args.url or ""
        if urlparse(url).scheme not in ("http", "https"):
            self._console.error(f"Not an http(s) URL: {url!r}")
            return EXIT_ERROR
        timeout = self._provider_config(args).timeout
        try:
            page = self.http_client.get(
                url, timeout=timeout, max_redirects=MAX_REDIRECTS
            )
        except httpx.HTTPStatusError as e:
            raise FetchError(url, f"HTTP {e.response.status_code}") from e
        except httpx.TooManyRedirects as e:
            raise FetchError(url, f"more than {MAX_REDIRECTS} redirects") from e
        except httpx.HTTPError as e:
            raise FetchError(url, str(e) or type(e).__name__) from e
        if "html" not in page.content_type.lower():
            self._console.warning(
                f"Content type is {page.content_type or 'missing'}, not HTML",
                title="fetch",
            )
        self._console.debug(f"Fetched {page.url} after {page.redirects} redirects")
        self._writer.write_bytes(page.content, args.output_path)
        return EXIT_OK

    def _dispatch(self, args: CommandLineArgs) -> int:
        if args.command == "fetch":
            return self._fetch(args)
        handlers = {
            "detect": self._detect,
            "correct": self._correct,
            "apply": self._apply,
            "evaluate": self._evaluate,
            "benchmark": self._benchmark,
            "taxonomy": self._taxonomy,
        }
        handler = handlers.get(args.command or "")
        if handler is None:
            self._console.error(f"Unknown command: {args.command}")
            return EXIT_ERROR
        registry, exit_code = self._load_registry(args)
        if registry is None:
            return exit_code or EXIT_ERROR
        return handler(args, registry)

    def run(self) -> int:
        """
        Run the application.

        Returns:
            Exit code: 0 on success, 1 when ``detect`` found violations and
            2 on errors
        """
        args = self.arg_parser.parse_args()
        self._args = args
        self._console.verbose = args.verbose

        if args.version:
            self._console.info(f"a11y-mender version {__version__}", title="Version")
            return EXIT_OK

        to_stdout = args.output_path is None or args.output_path == STDIO
        self._console.reserve_stdout(to_stdout and args.command != "taxonomy")
        try:
            return self._dispatch(args)
        except (A11yMenderError, OSError, ValueError) as e:
            self._console.exception(f"{args.command} failed", e)
            return EXIT_ERROR
        finally:
            self._console.reserve_stdout(False)

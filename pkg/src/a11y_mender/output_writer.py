# ruff: noqa: D102
"""Report and listing output for the a11y-mender application."""

from __future__ import annotations

import json
import sys
from collections.abc import Sequence
from pathlib import Path

from rich.console import Console as RichConsole
from rich.table import Table

from .console import BeautifulConsole
from .models import EvaluationReport
from .taxonomy import TaxonomyRegistry, ViolationTypeSpec

STDIO = Path("-")


def _fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4f}"


class ReportWriter:
    """Write JSON reports and render listings as table, plain text or JSON."""

    console: BeautifulConsole

    def __init__(self, console: BeautifulConsole | None = None) -> None:
        if console is None:
            from .console import console as default_console

            console = default_console
        self.console = console

    def _table(self, table: Table) -> None:
        RichConsole(file=sys.stdout, soft_wrap=False).print(table)

    # ------------------------------------------------------------------
    # Payloads
    # ------------------------------------------------------------------
    def write_text(self, text: str, path: Path | None) -> None:
        """Write a payload to a file, or to stdout for None or ``-``."""
        if path is None or path == STDIO:
            self.console.print_raw(text)
            return
        _ = path.write_text(text if text.endswith("\n") else text + "\n", "utf-8")

    def write_bytes(self, content: bytes, path: Path | None) -> None:
        """Write raw bytes to a file, or to stdout for None or ``-``."""
        if path is None or path == STDIO:
            _ = sys.stdout.buffer.write(content)
            sys.stdout.flush()
            return
        _ = path.write_bytes(content)

    # ------------------------------------------------------------------
    # Taxonomy
    # ------------------------------------------------------------------
    def display_taxonomy(
        self, specs: Sequence[ViolationTypeSpec], output_format: str | None = None
    ) -> None:
        fmt = (output_format or "table").lower()

        if fmt == "plain":
            for spec in specs:
                self.console.print_raw(
                    f"{spec.name}\t{spec.category}\t{spec.impact}\t{spec.score}"
                    f"\t{','.join(spec.wcag)}"
                )
            return

        if fmt == "json":
            for spec in specs:
                record = {
                    "name": spec.name,
                    "category": spec.category.value,
                    "impact": spec.impact.value,
                    "score": spec.score,
                    "wcag": list(spec.wcag),
                    "supplementary": spec.supplementary.value,
                }
                self.console.print_raw(json.dumps(record, ensure_ascii=False))
            return

        if not specs:
            self.console.print_raw("No violation types.")
            return

        table = Table(title=f"Violation types ({len(specs)})")
        table.add_column("Name", style="cyan", no_wrap=True)
        table.add_column("Category")
        table.add_column("Impact")
        table.add_column("Score", justify="right")
        table.add_column("WCAG")
        for spec in specs:
            table.add_row(
                spec.name,
                spec.category.label,
                spec.impact.value.capitalize(),
                str(spec.score),
                ", ".join(spec.wcag),
            )
        self._table(table)

    def display_type(
        self,
        spec: ViolationTypeSpec,
        registry: TaxonomyRegistry,
        output_format: str | None = None,
    ) -> None:
        fmt = (output_format or "table").lower()
        if fmt == "json":
            record = {
                "name": spec.name,
                "category": spec.category.value,
                "description": spec.description,
                "impact": spec.impact.value,
                "score": spec.score,
                "wcag": list(spec.wcag),
                "supplementary": spec.supplementary.value,
            }
            self.console.print_raw(json.dumps(record, ensure_ascii=False))
            return

        rows = [
            ("Name", spec.name),
            ("Category", spec.category.label),
            ("Description", spec.description),
            ("Impact", spec.impact.value.capitalize()),
            ("Score", str(spec.score)),
            ("WCAG", ", ".join(f"WCAG {n}" for n in spec.wcag)),
            ("Supplementary", spec.supplementary.value),
            ("Guidelines", registry.render_guidelines(spec)),
        ]
        if fmt == "plain":
            for label, value in rows:
                self.console.print_raw(f"{label}: {value}")
            return

        table = Table(title=spec.name, show_header=False)
        table.add_column("Field", style="cyan", no_wrap=True)
        table.add_column("Value")
        for label, value in rows:
            table.add_row(label, value)
        self._table(table)

    # ------------------------------------------------------------------
    # Metrics
    # ------------------------------------------------------------------
    def display_metrics(
        self, report: EvaluationReport, output_format: str | None = None
    ) -> None:
        fmt = (output_format or "table").lower()

        if fmt == "json":
            self.console.print_raw(
                report.model_dump_json(by_alias=True, exclude={"outcomes"})
            )
            return

        if fmt == "plain":
            self.console.print_raw(
                f"entries={report.entries} r_initial={_fmt(report.r_initial)} "
                f"r_fix={_fmt(report.r_fix)} improvement={_fmt(report.improvement)} "
                f"corrected={report.corrected} llm_calls={report.llm_calls}"
            )
            for name, metrics in report.per_category.items():
                self.console.print_raw(
                    f"{name}: count={metrics.count} "
                    f"r_initial={_fmt(metrics.r_initial)} r_fix={_fmt(metrics.r_fix)} "
                    f"improvement={_fmt(metrics.improvement)} "
                    f"corrected={metrics.corrected}"
                )
            if report.similarity is not None:
                for row in report.similarity.rows:
                    self.console.print_raw(
                        f"similarity {row.violation_name}: "
                        f"{_fmt(row.mean_similarity)} ({row.entries})"
                    )
                self.console.print_raw(
                    f"similarity overall: {_fmt(report.similarity.overall)}"
                )
            return

        title = "Violation score decrease"
        if report.strategy is not None:
            title = f"{title} ({report.strategy})"
        table = Table(title=title)
        table.add_column("Category", style="cyan")
        table.add_column("Entries", justify="right")
        table.add_column("R initial", justify="right")
        table.add_column("R fix", justify="right")
        table.add_column("Decrease", justify="right")
        table.add_column("Corrected", justify="right")
        for name, metrics in report.per_category.items():
            table.add_row(
                name,
                str(metrics.count),
                _fmt(metrics.r_initial),
                _fmt(metrics.r_fix),
                _fmt(metrics.improvement),
                str(metrics.corrected),
            )
        table.add_row(
            "all",
            str(report.entries),
            _fmt(report.r_initial),
            _fmt(report.r_fix),
            _fmt(report.improvement),
            str(report.corrected),
            style="bold",
        )
        self._table(table)

        if report.similarity is not None and report.similarity.rows:
            similarity = Table(title="Similarity to human corrections")
            similarity.add_column("Violation type", style="cyan")
            similarity.add_column("Entries", justify="right")
            similarity.add_column("Mean similarity", justify="right")
            for row in report.similarity.rows:
                similarity.add_row(
                    row.violation_name, str(row.entries), _fmt(row.mean_similarity)
                )
            similarity.add_row(
                "overall", "", _fmt(report.similarity.overall), style="bold"
            )
            self._table(similarity)

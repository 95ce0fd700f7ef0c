"""Tests for output formats in ReportWriter."""

import json

import pytest

from a11y_mender.enums import Category, Strategy
from a11y_mender.models import (
    CategoryMetrics,
    EvaluationReport,
    SimilarityRow,
    SimilaritySummary,
)
from a11y_mender.output_writer import ReportWriter


@pytest.fixture
def captured():
    """Writer whose raw output is collected in a list."""
    writer = ReportWriter()
    outputs: list[str] = []

    def capture(content: str, *_args: object, **_kwargs: object) -> None:
        outputs.append(content)

    writer.console.print_raw = capture  # type: ignore[assignment]
    yield writer, outputs
    del writer.console.print_raw


def _report() -> EvaluationReport:
    return EvaluationReport(
        strategy=Strategy.GUIDED,
        model="mock",
        entries=2,
        r_initial=4.5,
        r_fix=0.5,
        improvement=8 / 9,
        corrected=1,
        llm_calls=3,
        per_category={
            "syntactic": CategoryMetrics(
                count=2, r_initial=4.5, r_fix=0.5, improvement=8 / 9, corrected=1
            )
        },
        similarity=SimilaritySummary(
            rows=[
                SimilarityRow(
                    violation_name="image-alt-not-descriptive",
                    mean_similarity=0.7037,
                    entries=1,
                )
            ],
            overall=0.7037,
        ),
    )


def test_taxonomy_plain(captured, registry) -> None:
    """Plain format prints one tab-separated line per type."""
    writer, outputs = captured
    writer.display_taxonomy(registry.list_types(Category.LAYOUT), "plain")

    assert len(outputs) == len(registry.list_types(Category.LAYOUT))
    contrast = next(line for line in outputs if line.startswith("color-contrast\t"))
    assert contrast.split("\t")[1:4] == ["layout", "serious", "4"]


def test_taxonomy_json_outputs_ndjson(captured, registry) -> None:
    """JSON format emits newline-delimited records."""
    writer, outputs = captured
    specs = registry.list_types(Category.SEMANTIC)
    writer.display_taxonomy(specs, "json")

    records = [json.loads(line) for line in outputs]
    assert [r["name"] for r in records] == [s.name for s in specs]
    assert {r["category"] for r in records} == {"semantic"}


def test_empty_taxonomy_table(captured) -> None:
    """An empty listing says so instead of drawing a table."""
    writer, outputs = captured
    writer.display_taxonomy([])
    assert outputs == ["No violation types."]


def test_taxonomy_table(capsys, registry) -> None:
    """The default table lists names and labels."""
    ReportWriter().display_taxonomy(registry.list_types(Category.SYNTACTIC))
    out = capsys.readouterr().out
    assert "button-name" in out
    assert "Syntax" in out


def test_type_plain_includes_guidelines(captured, registry) -> None:
    """Plain type details carry the rendered success criteria."""
    writer, outputs = captured
    spec = registry.lookup("html-has-lang")
    writer.display_type(spec, registry, "plain")

    assert outputs[0] == "Name: html-has-lang"
    assert "Impact: Serious" in outputs
    guidelines = next(line for line in outputs if line.startswith("Guidelines: "))
    assert "WCAG 3.1.1 Language of Page" in guidelines


def test_type_json(captured, registry) -> None:
    """JSON type details."""
    writer, outputs = captured
    writer.display_type(registry.lookup("button-name"), registry, "json")
    record = json.loads(outputs[0])
    assert record["impact"] == "critical"
    assert record["score"] == 5


def test_metrics_plain(captured) -> None:
    """Plain metrics are key=value lines."""
    writer, outputs = captured
    writer.display_metrics(_report(), "plain")

    assert outputs[0] == (
        "entries=2 r_initial=4.5000 r_fix=0.5000 improvement=0.8889 "
        "corrected=1 llm_calls=3"
    )
    assert outputs[1].startswith("syntactic: count=2")
    assert outputs[-2] == "similarity image-alt-not-descriptive: 0.7037 (1)"
    assert outputs[-1] == "similarity overall: 0.7037"


def test_metrics_json_leaves_out_entries(captured) -> None:
    """JSON metrics are a summary without per-entry outcomes."""
    writer, outputs = captured
    writer.display_metrics(_report(), "json")
    data = json.loads(outputs[0])
    assert data["rFix"] == 0.5
    assert "outcomes" not in data


def test_metrics_table(capsys) -> None:
    """The default table has a total row and a similarity table."""
    ReportWriter().display_metrics(_report())
    out = capsys.readouterr().out
    assert "Violation score decrease (guided)" in out
    assert "Similarity to human corrections" in out
    assert "0.8889" in out

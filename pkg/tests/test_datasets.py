"""Tests for benchmark datasets and violation reports."""

import json
from pathlib import Path

import pytest

from a11y_mender import config
from a11y_mender.corrector import CandidateScores, CorrectionFlags, CorrectionOutcome
from a11y_mender.datasets import (
    build_report,
    dump_report,
    load_bundled_corpus,
    load_dataset,
    load_report,
    parse_dataset,
    parse_report,
    write_report,
)
from a11y_mender.enums import Category, CorrectionSource, DiscardReason
from a11y_mender.errors import DatasetSchemaError
from a11y_mender.models import DiscardRecord
from a11y_mender.static_detector import detect_static
from a11y_mender.violations import PageContext


def _entry(entry_id="e-1", name="button-name", impact="critical", score=5, **extra):
    entry = {
        "id": entry_id,
        "category": "syntactic",
        "violationName": name,
        "htmlElements": ['<button type="button"><img src="a.png"></button>'],
        "description": "Ensures buttons have discernible text.",
        "impact": impact,
        "violationScore": score,
    }
    entry.update(extra)
    return entry


def _document(*entries):
    return json.dumps({"schemaVersion": "1.0", "entries": list(entries)}, indent=2)


def test_bundled_corpus(registry):
    """Test the mini corpus shipped with the package."""
    corpus = load_bundled_corpus(registry)

    assert len(corpus) == 11
    assert corpus.schema_version == "1.0"
    assert "vitamin portal" in corpus.provenance
    assert {v.category for v in corpus.entries} == set(Category)
    assert all(v.score == v.impact.score for v in corpus.entries)
    (image,) = [v for v in corpus.entries if v.human_references]
    assert image.type_name == "image-alt-not-descriptive"
    assert image.screenshot == config.DATA_DIR / "vitamin_portal.png"
    assert len(image.human_references) == 3


def test_contrast_entry_keeps_colors(registry):
    """Test that supplementary colors survive loading."""
    corpus = load_bundled_corpus(registry)
    contrast = next(v for v in corpus.entries if v.type_name == "color-contrast")
    assert contrast.supplementary.foreground == "#888888"
    assert contrast.supplementary.background == "#333333"
    assert contrast.supplementary.contrast_ratio == pytest.approx(3.56)
    assert contrast.approximate


def test_bare_array_is_accepted(registry):
    """Test a dataset written as a plain list of entries."""
    dataset = parse_dataset(json.dumps([_entry()]), registry)
    assert [v.id for v in dataset.entries] == ["e-1"]
    assert dataset.provenance == ""


@pytest.mark.parametrize(
    ("entries", "details"),
    [
        ([_entry(name="made-up-rule")], "unknown violation type 'made-up-rule'"),
        ([_entry(score=3)], "violationScore 3 does not match impact critical"),
        ([_entry(), _entry()], "duplicate id"),
    ],
)
def test_invalid_entries_are_located(registry, entries, details):
    """Test that entry errors name the index, id and line."""
    text = _document(*entries)
    bad = len(entries) - 1
    expected_line = [
        n
        for n, line in enumerate(text.splitlines(), start=1)
        if '"violationName"' in line
    ][bad]

    with pytest.raises(DatasetSchemaError) as excinfo:
        parse_dataset(text, registry)

    error = excinfo.value
    assert error.details == details
    assert error.index == bad
    assert error.entry_id == "e-1"
    assert error.line == expected_line
    assert str(error).startswith(f"Dataset error (entry {bad}, id e-1, line ")


def test_missing_required_field(registry):
    """Test that schema violations of an entry are located too."""
    entry = _entry()
    del entry["htmlElements"]
    with pytest.raises(DatasetSchemaError, match="htmlElements") as excinfo:
        parse_dataset(_document(entry), registry)
    assert excinfo.value.index == 0
    assert excinfo.value.entry_id == "e-1"


def test_unsupported_schema_version(registry):
    """Test that a different major version is refused."""
    text = json.dumps({"schemaVersion": "2.0", "entries": []})
    with pytest.raises(DatasetSchemaError, match="unsupported schemaVersion '2.0'"):
        parse_dataset(text, registry)


def test_missing_entries_array(registry):
    """Test an object without entries."""
    with pytest.raises(DatasetSchemaError, match="missing 'entries' array"):
        parse_dataset(json.dumps({"schemaVersion": "1.0"}), registry)


def test_invalid_json(registry):
    """Test that text that is not JSON is a schema error."""
    with pytest.raises(DatasetSchemaError):
        parse_dataset("{not json", registry)


def test_relative_screenshot_resolved_against_file(tmp_path, registry):
    """Test screenshot paths relative to the dataset file."""
    path = tmp_path / "dataset.json"
    path.write_text(_document(_entry(screenshot="shots/page.png")), encoding="utf-8")

    (v,) = load_dataset(path, registry).entries

    assert v.screenshot == tmp_path.resolve() / "shots" / "page.png"


class TestReports:
    """Tests for detection and correction reports."""

    CTX = PageContext(url="https://www.vitaminhealthguide.com/", domain="Health")

    def test_detection_report_round_trip(self, portal_doc, registry, tmp_path):
        """Test writing and reading back a detection report."""
        violations = detect_static(portal_doc, self.CTX, registry)
        discarded = [
            DiscardRecord(
                snippet="<p>gone</p>",
                violation_name="misleading-heading",
                reason=DiscardReason.NO_MATCH_IN_DOCUMENT,
            )
        ]
        report = build_report(violations, source="portal.html", discarded=discarded)
        path = tmp_path / "report.json"
        write_report(report, path, pretty=True)

        loaded = load_report(path, registry)

        assert [v.id for v in loaded.violations] == [v.id for v in violations]
        assert [v.snippet.text for v in loaded.violations] == [
            v.snippet.text for v in violations
        ]
        assert loaded.outcomes == {}
        assert loaded.source == "portal.html"
        assert loaded.discarded == discarded

    def test_report_uses_camel_case(self, portal_doc, registry):
        """Test the wire names of report entries."""
        violations = detect_static(portal_doc, self.CTX, registry)
        data = json.loads(dump_report(build_report(violations)))

        assert data["schemaVersion"] == "1.0"
        first = data["entries"][0]
        assert first["violationName"] == "html-has-lang"
        assert first["violationScore"] == 4
        assert "htmlElements" in first
        assert "nodePaths" in first

    def test_correction_attached_by_id(self, portal_doc, registry):
        """Test that a correction travels with its violation."""
        violations = detect_static(portal_doc, self.CTX, registry)
        v = violations[0]
        outcome = CorrectionOutcome(
            violation=v,
            chosen_html='<html lang="en">',
            source=CorrectionSource.LLM2,
            scores=CandidateScores(4, 4, 0),
            flags=CorrectionFlags(),
            final_score=0,
            confidence=90,
            explanation="Added the page language.",
            llm_calls=2,
        )
        text = dump_report(build_report(violations, outcomes=[outcome]))

        loaded = parse_report(text, registry)

        assert set(loaded.outcomes) == {v.id}
        restored = loaded.outcomes[v.id]
        assert restored.chosen_html == '<html lang="en">'
        assert restored.source is CorrectionSource.LLM2
        assert restored.scores == CandidateScores(4, 4, 0)
        assert restored.confidence == 90
        assert restored.llm_calls == 2
        assert json.loads(text)["entries"][0]["correction"]["finalScore"] == 0

    def test_report_entries_are_checked(self, registry):
        """Test that reports are validated like datasets."""
        with pytest.raises(DatasetSchemaError, match="duplicate id"):
            parse_report(_document(_entry(), _entry()), registry)

    def test_report_file_missing(self, registry):
        """Test a missing report file."""
        with pytest.raises(FileNotFoundError):
            load_report(Path("/nonexistent/report.json"), registry)

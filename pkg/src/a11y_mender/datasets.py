"""
Dataset and report I/O for the a11y-mender application.

This module converts between in-memory violations and their JSON records,
loads benchmark datasets and detection or correction reports, and writes
reports. Every document carries a top-level ``schemaVersion``; bare arrays
of entries are accepted on input.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import BaseModel, TypeAdapter, ValidationError

from . import config
from .corrector import CandidateScores, CorrectionFlags, CorrectionOutcome
from .dom import HtmlSnippet
from .errors import DatasetSchemaError, raise_schema_error
from .models import (
    SCHEMA_VERSION,
    ContextRecord,
    CorrectionFlagsRecord,
    CorrectionRecord,
    CorrectionScoresRecord,
    DiscardRecord,
    SupplementaryRecord,
    ViolationRecord,
    ViolationReport,
)
from .taxonomy import TaxonomyRegistry
from .violations import AffectedElement, DetectedViolation, PageContext, Supplementary

_DOCUMENT = TypeAdapter(list[dict[str, Any]] | dict[str, Any])
_NAME_KEY = re.compile(r'"violationName"\s*:')


@dataclass
class BenchmarkDataset:
    """Violation entries to correct, with where they came from."""

    entries: list[DetectedViolation]
    provenance: str = ""
    schema_version: str = SCHEMA_VERSION

    def __len__(self) -> int:
        """Number of entries."""
        return len(self.entries)


@dataclass
class LoadedReport:
    """A detection or correction report read back into memory."""

    violations: list[DetectedViolation]
    outcomes: dict[str, CorrectionOutcome] = field(default_factory=dict)
    """Corrections keyed by violation id, for entries that carry one."""

    source: str = ""
    discarded: list[DiscardRecord] = field(default_factory=list)


# ----------------------------------------------------------------------
# Record conversion
# ----------------------------------------------------------------------
def outcome_to_record(outcome: CorrectionOutcome) -> CorrectionRecord:
    """Convert a correction outcome to its JSON record."""
    return CorrectionRecord(
        chosen_html=outcome.chosen_html,
        source=outcome.source,
        scores=CorrectionScoresRecord(
            original=outcome.scores.original,
            llm1=outcome.scores.llm1,
            llm2=outcome.scores.llm2,
        ),
        flags=CorrectionFlagsRecord(
            not_fixed=outcome.flags.not_fixed,
            invalid_llm1=outcome.flags.invalid_llm1,
            invalid_llm2=outcome.flags.invalid_llm2,
        ),
        final_score=outcome.final_score,
        confidence=outcome.confidence,
        explanation=outcome.explanation,
        llm_calls=outcome.llm_calls,
        error=outcome.error,
    )


def record_to_outcome(
    v: DetectedViolation, record: CorrectionRecord
) -> CorrectionOutcome:
    """Rebuild a correction outcome of a violation from its record."""
    return CorrectionOutcome(
        violation=v,
        chosen_html=record.chosen_html,
        source=record.source,
        scores=CandidateScores(
            original=record.scores.original,
            llm1=record.scores.llm1,
            llm2=record.scores.llm2,
        ),
        flags=CorrectionFlags(
            not_fixed=record.flags.not_fixed,
            invalid_llm1=record.flags.invalid_llm1,
            invalid_llm2=record.flags.invalid_llm2,
        ),
        final_score=record.final_score,
        confidence=record.confidence,
        explanation=record.explanation,
        llm_calls=record.llm_calls,
        error=record.error,
    )


def violation_to_record(
    v: DetectedViolation, outcome: CorrectionOutcome | None = None
) -> ViolationRecord:
    """
    Convert a violation, and optionally its correction, to a JSON record.

    Downloaded image bytes are not serialized.
    """
    supplementary = None
    if v.supplementary is not None:
        supplementary = SupplementaryRecord(
            kind=v.supplementary.kind,
            ref=v.supplementary.ref,
            foreground=v.supplementary.foreground,
            background=v.supplementary.background,
            contrast_ratio=v.supplementary.contrast_ratio,
        )
    return ViolationRecord(
        id=v.id,
        category=v.category,
        violation_name=v.type_name,
        html_elements=v.html_elements,
        description=v.description,
        impact=v.impact,
        violation_score=v.score,
        supplementary=supplementary,
        context=ContextRecord(url=v.context.url, domain=v.context.domain),
        approximate=v.approximate,
        node_paths=v.node_paths,
        fix_advice=v.fix_advice,
        screenshot=str(v.screenshot) if v.screenshot is not None else None,
        human_references=(
            list(v.human_references) if v.human_references is not None else None
        ),
        correction=outcome_to_record(outcome) if outcome is not None else None,
    )


def record_to_violation(
    record: ViolationRecord,
    registry: TaxonomyRegistry,
    *,
    base_dir: Path | None = None,
) -> DetectedViolation:
    """
    Rebuild a violation from its record.

    Args:
        record: The record
        registry: Taxonomy the violation name must resolve in
        base_dir: Directory relative screenshot paths are resolved against

    Returns:
        The violation; node paths are kept as text since the page is not loaded

    Raises:
        UnknownViolationTypeError: If the name is not in the registry
    """
    spec = registry.lookup(record.violation_name)
    paths: Sequence[str | None] = record.node_paths
    if len(paths) != len(record.html_elements):
        paths = [None] * len(record.html_elements)
    affected = tuple(
        AffectedElement(snippet=HtmlSnippet(text), path=path)
        for text, path in zip(record.html_elements, paths, strict=True)
    )
    supplementary = None
    if record.supplementary is not None:
        supplementary = Supplementary(
            kind=record.supplementary.kind,
            ref=record.supplementary.ref,
            foreground=record.supplementary.foreground,
            background=record.supplementary.background,
            contrast_ratio=record.supplementary.contrast_ratio,
        )
    screenshot = None
    if record.screenshot:
        screenshot = Path(record.screenshot)
        if base_dir is not None and not screenshot.is_absolute():
            screenshot = base_dir / screenshot
    return DetectedViolation(
        id=record.id,
        type_name=spec.name,
        category=record.category,
        affected=affected,
        description=record.description,
        impact=record.impact,
        score=record.violation_score,
        supplementary=supplementary,
        context=PageContext(url=record.context.url, domain=record.context.domain),
        approximate=record.approximate,
        fix_advice=record.fix_advice,
        screenshot=screenshot,
        human_references=(
            tuple(record.human_references)
            if record.human_references is not None
            else None
        ),
    )


# ----------------------------------------------------------------------
# Loading
# ----------------------------------------------------------------------
def _entry_lines(text: str) -> list[int]:
    return [text.count("\n", 0, m.start()) + 1 for m in _NAME_KEY.finditer(text)]


def _parse_records(
    text: str,
) -> tuple[list[ViolationRecord], dict[str, Any], list[int]]:
    try:
        document = _DOCUMENT.validate_json(text)
    except ValidationError as exc:
        raise_schema_error(exc)
    header: dict[str, Any] = {}
    if isinstance(document, dict):
        header = document
        version = str(header.get("schemaVersion", ""))
        if version.split(".")[0] != SCHEMA_VERSION.split(".")[0]:
            msg = f"unsupported schemaVersion {version!r}"
            raise DatasetSchemaError(msg)
        raw_entries: Any = header.get("entries")
        if not isinstance(raw_entries, list):
            msg = "missing 'entries' array"
            raise DatasetSchemaError(msg)
        entries: list[Any] = raw_entries  # pyright: ignore[reportUnknownVariableType]
    else:
        entries = document
    lines = _entry_lines(text)
    if len(lines) != len(entries):
        lines = []
    records: list[ViolationRecord] = []
    for index, entry in enumerate(entries):
        line = lines[index] if lines else None
        entry_id = entry.get("id") if isinstance(entry, dict) else None
        try:
            records.append(ViolationRecord.model_validate(entry))
        except ValidationError as exc:
            raise_schema_error(
                exc,
                index=index,
                entry_id=entry_id if isinstance(entry_id, str) else None,
                line=line,
            )
    return records, header, lines


def _entry_problem(
    record: ViolationRecord, registry: TaxonomyRegistry, seen: set[str]
) -> str | None:
    if record.violation_name not in registry:
        return f"unknown violation type {record.violation_name!r}"
    if record.violation_score != record.impact.score:
        return (
            f"violationScore {record.violation_score} does not match "
            f"impact {record.impact}"
        )
    if record.id in seen:
        return "duplicate id"
    return None


def _check_entries(
    records: Sequence[ViolationRecord], registry: TaxonomyRegistry, lines: list[int]
) -> None:
    seen: set[str] = set()
    for index, record in enumerate(records):
        problem = _entry_problem(record, registry, seen)
        if problem is not None:
            raise DatasetSchemaError(
                problem,
                index=index,
                entry_id=record.id,
                line=lines[index] if lines else None,
            )
        seen.add(record.id)


def parse_dataset(
    text: str, registry: TaxonomyRegistry, *, base_dir: Path | None = None
) -> BenchmarkDataset:
    """
    Parse a benchmark dataset document.

    Args:
        text: JSON text, either a versioned object or a bare array of entries
        registry: Taxonomy every entry must resolve in
        base_dir: Directory relative screenshot paths are resolved against

    Returns:
        The dataset

    Raises:
        DatasetSchemaError: If the document or an entry is invalid; entry
            errors carry the entry index, id and line
    """
    records, header, lines = _parse_records(text)
    _check_entries(records, registry, lines)
    return BenchmarkDataset(
        entries=[record_to_violation(r, registry, base_dir=base_dir) for r in records],
        provenance=str(header.get("provenance", "")),
        schema_version=str(header.get("schemaVersion", SCHEMA_VERSION)),
    )


def load_dataset(path: Path, registry: TaxonomyRegistry) -> BenchmarkDataset:
    """
    Load a benchmark dataset file.

    Raises:
        FileNotFoundError: If the file does not exist
        DatasetSchemaError: If the file is invalid
    """
    text = path.read_text(encoding="utf-8")
    return parse_dataset(text, registry, base_dir=path.resolve().parent)


def load_bundled_corpus(registry: TaxonomyRegistry) -> BenchmarkDataset:
    """Load the mini corpus shipped with the package."""
    return load_dataset(config.BUNDLED_CORPUS, registry)


def parse_report(
    text: str, registry: TaxonomyRegistry, *, base_dir: Path | None = None
) -> LoadedReport:
    """
    Parse a detection or correction report.

    Raises:
        DatasetSchemaError: If the report is invalid
    """
    records, header, lines = _parse_records(text)
    _check_entries(records, registry, lines)
    violations: list[DetectedViolation] = []
    outcomes: dict[str, CorrectionOutcome] = {}
    for record in records:
        v = record_to_violation(record, registry, base_dir=base_dir)
        violations.append(v)
        if record.correction is not None:
            outcomes[v.id] = record_to_outcome(v, record.correction)
    discarded: list[DiscardRecord] = []
    if header:
        try:
            report = ViolationReport.model_validate(header)
        except ValidationError as exc:
            raise_schema_error(exc)
        discarded = report.discarded
    return LoadedReport(
        violations=violations,
        outcomes=outcomes,
        source=str(header.get("source", "")),
        discarded=discarded,
    )


def load_report(path: Path, registry: TaxonomyRegistry) -> LoadedReport:
    """Load a detection or correction report file."""
    text = path.read_text(encoding="utf-8")
    return parse_report(text, registry, base_dir=path.resolve().parent)


# ----------------------------------------------------------------------
# Writing
# ----------------------------------------------------------------------
def build_report(
    violations: Sequence[DetectedViolation],
    *,
    source: str = "",
    outcomes: Sequence[CorrectionOutcome] = (),
    discarded: Sequence[DiscardRecord] = (),
) -> ViolationReport:
    """
    Assemble a detection or correction report.

    Args:
        violations: Entries in report order
        source: Page the entries were detected on
        outcomes: Corrections; attached to the entry with the same id
        discarded: Ungrounded model findings

    Returns:
        The report
    """
    by_id = {o.violation_id: o for o in outcomes}
    return ViolationReport(
        source=source,
        entries=[violation_to_record(v, by_id.get(v.id)) for v in violations],
        discarded=list(discarded),
    )


def dump_report(report: BaseModel, *, pretty: bool = False) -> str:
    """Serialize a report to camelCase JSON text."""
    return report.model_dump_json(
        by_alias=True, indent=2 if pretty else None
    )


def write_report(report: BaseModel, path: Path, *, pretty: bool = False) -> None:
    """
    Write a report to a file.

    Args:
        report: Any report model
        path: Destination file
        pretty: Whether to indent the JSON
    """
    _ = path.write_text(dump_report(report, pretty=pretty) + "\n", encoding="utf-8")


__all__ = [
    "BenchmarkDataset",
    "LoadedReport",
    "build_report",
    "dump_report",
    "load_bundled_corpus",
    "load_dataset",
    "load_report",
    "outcome_to_record",
    "parse_dataset",
    "parse_report",
    "record_to_outcome",
    "record_to_violation",
    "violation_to_record",
    "write_report",
]

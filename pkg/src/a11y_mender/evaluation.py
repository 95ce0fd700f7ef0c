"""
Evaluation harness for the a11y-mender application.

This module computes the violation-score metrics of a correction run
(average score before and after, relative improvement, corrected count),
the embedding similarity between model corrections and human references,
and runs whole benchmarks under any correction strategy.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .corrector import (
    CandidateScorer,
    CandidateScores,
    CorrectionFlags,
    CorrectionOutcome,
    ViolationCorrector,
    correct_all,
)
from .datasets import BenchmarkDataset
from .embeddings import cosine_similarity, mean_similarity
from .enums import Category, CorrectionSource, Strategy
from .errors import A11yMenderError, EmptyScoresError, UndefinedImprovementError
from .gateway import LlmGateway
from .models import (
    CategoryMetrics,
    EntryOutcomeRecord,
    EvaluationReport,
    SimilarityRow,
    SimilaritySummary,
)
from .scoring import FragmentScorer, accessible_text
from .screenshots import ScreenshotRef
from .taxonomy import TaxonomyRegistry
from .types import Console, Embedder
from .violations import DetectedViolation


def average_violation_score(scores: Sequence[float]) -> float:
    """
    Average violation score of a dataset.

    Raises:
        EmptyScoresError: If there are no scores
    """
    if not scores:
        raise EmptyScoresError
    return float(np.mean(scores))


def improvement(r_initial: float, r_fix: float) -> float:
    """
    Relative decrease of the average violation score, as a fraction.

    Negative when the corrections made things worse.

    Raises:
        UndefinedImprovementError: If ``r_initial`` is not positive
    """
    if r_initial <= 0:
        raise UndefinedImprovementError
    return 1.0 - r_fix / r_initial


def corrected_count(outcomes: Iterable[CorrectionOutcome]) -> int:
    """Number of outcomes that ended at score 0 with a model correction."""
    return sum(1 for o in outcomes if o.final_score == 0 and not o.flags.not_fixed)


# ----------------------------------------------------------------------
# Similarity
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SimilarityItem:
    """One model correction to compare with its human references."""

    entry_id: str
    violation_name: str
    text: str
    references: tuple[str, ...]


@dataclass
class SimilarityStudy:
    """Per-entry, per-type and overall similarity of a run."""

    per_entry: dict[str, float] = field(default_factory=dict)
    rows: list[SimilarityRow] = field(default_factory=list)
    overall: float | None = None
    failures: int = 0

    def summary(self) -> SimilaritySummary:
        """The study as a report section."""
        return SimilaritySummary(
            rows=self.rows, overall=self.overall, failures=self.failures
        )


def entry_similarity(text: str, references: Sequence[str], embedder: Embedder) -> float:
    """
    Mean cosine similarity of a text against each of its references.

    Raises:
        ValueError: If there are no references
        ProviderError: If the embedder fails
        DimensionMismatchError: If the embedder returns vectors of different sizes
    """
    if not references:
        msg = "At least one reference is needed"
        raise ValueError(msg)
    vector = embedder.embed(text)
    return mean_similarity(
        [cosine_similarity(vector, embedder.embed(ref)) for ref in references]
    )


def similarity_report(
    items: Sequence[SimilarityItem],
    embedder: Embedder,
    *,
    console: Console | None = None,
) -> SimilarityStudy:
    """
    Compare model corrections with human references.

    Each entry's similarity is the mean over its references; rows and the
    overall value are means over entries. Entries whose embedding fails are
    left out and counted.

    Args:
        items: Entries with at least one reference
        embedder: Text embedder
        console: Console for per-entry warnings

    Returns:
        The study; rows are sorted by violation name
    """
    study = SimilarityStudy()
    by_type: dict[str, list[float]] = defaultdict(list)
    for item in items:
        try:
            value = entry_similarity(item.text, item.references, embedder)
        except (A11yMenderError, ValueError) as exc:
            study.failures += 1
            if console:
                console.warning(f"similarity skipped: {exc}", title=item.entry_id)
            continue
        study.per_entry[item.entry_id] = value
        by_type[item.violation_name].append(value)
    study.rows = [
        SimilarityRow(
            violation_name=name,
            mean_similarity=mean_similarity(values),
            entries=len(values),
        )
        for name, values in sorted(by_type.items())
    ]
    if study.per_entry:
        study.overall = mean_similarity(list(study.per_entry.values()))
    return study


def similarity_items(outcomes: Sequence[CorrectionOutcome]) -> list[SimilarityItem]:
    """
    Similarity inputs of the outcomes that have human references.

    Semantic entries compare the accessible text the violation is about, such
    as the new alt value; other entries compare the chosen HTML.
    """
    items: list[SimilarityItem] = []
    for o in outcomes:
        v = o.violation
        if not v.human_references:
            continue
        text = o.chosen_html
        if v.category is Category.SEMANTIC:
            text = accessible_text(v.type_name, o.chosen_html) or o.chosen_html
        items.append(SimilarityItem(v.id, v.type_name, text, v.human_references))
    return items


# ----------------------------------------------------------------------
# Aggregation
# ----------------------------------------------------------------------
def _improvement_or_none(r_initial: float, r_fix: float) -> float | None:
    try:
        return improvement(r_initial, r_fix)
    except UndefinedImprovementError:
        return None


def _category_metrics(outcomes: Sequence[CorrectionOutcome]) -> CategoryMetrics:
    r_initial = average_violation_score([o.scores.original for o in outcomes])
    r_fix = average_violation_score([o.final_score for o in outcomes])
    return CategoryMetrics(
        count=len(outcomes),
        r_initial=r_initial,
        r_fix=r_fix,
        improvement=_improvement_or_none(r_initial, r_fix),
        corrected=corrected_count(outcomes),
    )


def outcome_entry(
    outcome: CorrectionOutcome, similarity: float | None = None
) -> EntryOutcomeRecord:
    """Per-entry line of an evaluation report."""
    v = outcome.violation
    return EntryOutcomeRecord(
        id=v.id,
        violation_name=v.type_name,
        category=v.category,
        initial_score=outcome.scores.original,
        final_score=outcome.final_score,
        source=outcome.source,
        not_fixed=outcome.flags.not_fixed,
        llm_calls=outcome.llm_calls,
        similarity=similarity,
        error=outcome.error,
    )


def evaluate_outcomes(
    outcomes: Sequence[CorrectionOutcome],
    *,
    strategy: Strategy | None = None,
    model: str | None = None,
    similarity: SimilarityStudy | None = None,
) -> EvaluationReport:
    """
    Aggregate correction outcomes into an evaluation report.

    The initial score of an entry is the score of its original HTML and the
    final score is the score of the chosen HTML. The improvement is None when
    the initial average is 0.

    Raises:
        EmptyScoresError: If there are no outcomes
    """
    r_initial = average_violation_score([o.scores.original for o in outcomes])
    r_fix = average_violation_score([o.final_score for o in outcomes])
    grouped: dict[Category, list[CorrectionOutcome]] = defaultdict(list)
    for o in outcomes:
        grouped[o.violation.category].append(o)
    per_entry = similarity.per_entry if similarity is not None else {}
    return EvaluationReport(
        strategy=strategy,
        model=model,
        entries=len(outcomes),
        r_initial=r_initial,
        r_fix=r_fix,
        improvement=_improvement_or_none(r_initial, r_fix),
        corrected=corrected_count(outcomes),
        llm_calls=sum(o.llm_calls for o in outcomes),
        per_category={
            category.value: _category_metrics(grouped[category])
            for category in Category
            if grouped[category]
        },
        similarity=similarity.summary() if similarity is not None else None,
        outcomes=[outcome_entry(o, per_entry.get(o.violation_id)) for o in outcomes],
    )


def unchanged_outcome(v: DetectedViolation) -> CorrectionOutcome:
    """Outcome of a violation that was left as it is."""
    return CorrectionOutcome(
        violation=v,
        chosen_html=v.snippet.text,
        source=CorrectionSource.ORIGINAL,
        scores=CandidateScores(original=v.score),
        flags=CorrectionFlags(not_fixed=True),
        final_score=v.score,
    )


def compare_reports(
    before: Sequence[DetectedViolation],
    after: Mapping[str, CorrectionOutcome],
    *,
    console: Console | None = None,
) -> list[CorrectionOutcome]:
    """
    Pair detected violations with their corrections by id.

    Violations without a correction count as unchanged. Corrections for ids
    that are not in ``before`` are ignored with a warning.

    Returns:
        Outcomes in the order of ``before``
    """
    known = {v.id for v in before}
    for orphan in sorted(set(after) - known):
        if console:
            console.warning("correction has no detected violation", title=orphan)
    return [after.get(v.id) or unchanged_outcome(v) for v in before]


def run_benchmark(
    dataset: BenchmarkDataset,
    strategy: Strategy,
    gateway: LlmGateway,
    registry: TaxonomyRegistry,
    *,
    scorer: CandidateScorer | None = None,
    embedder: Embedder | None = None,
    screenshot: ScreenshotRef | None = None,
    max_workers: int = 4,
    console: Console | None = None,
) -> tuple[EvaluationReport, list[CorrectionOutcome]]:
    """
    Correct every dataset entry with one strategy and aggregate the metrics.

    Entries are corrected concurrently; the report keeps dataset order. A
    failing entry is recorded as not fixed and never stops the run.

    Args:
        dataset: Entries to correct
        strategy: Correction strategy
        gateway: Gateway for model calls
        registry: Taxonomy used for prompts and scoring
        scorer: Candidate scorer; a fragment scorer over ``registry`` when None
        embedder: Embedder for the similarity study; skipped when None
        screenshot: Page screenshot for visual entries without their own
        max_workers: Entries corrected at the same time
        console: Console for per-entry warnings

    Returns:
        The evaluation report and the outcomes in dataset order

    Raises:
        EmptyScoresError: If the dataset has no entries
    """
    corrector = ViolationCorrector(
        registry,
        gateway,
        scorer or FragmentScorer(registry),
        screenshot=screenshot,
        console=console,
    )
    outcomes = correct_all(
        dataset.entries, corrector, strategy, max_workers=max_workers
    )
    study = None
    if embedder is not None:
        items = similarity_items(outcomes)
        if items:
            study = similarity_report(items, embedder, console=console)
    report = evaluate_outcomes(
        outcomes,
        strategy=strategy,
        model=gateway.provider.name,
        similarity=study,
    )
    return report, outcomes


__all__ = [
    "SimilarityItem",
    "SimilarityStudy",
    "average_violation_score",
    "compare_reports",
    "corrected_count",
    "entry_similarity",
    "evaluate_outcomes",
    "improvement",
    "outcome_entry",
    "run_benchmark",
    "similarity_items",
    "similarity_report",
    "unchanged_outcome",
]

"""Tests for the evaluation metrics and the benchmark harness."""

import math
import sys
from dataclasses import replace
from pathlib import Path

import pytest

from a11y_mender.corrector import CandidateScores, CorrectionFlags, CorrectionOutcome
from a11y_mender.datasets import (
    build_report,
    dump_report,
    load_bundled_corpus,
    parse_report,
)
from a11y_mender.enums import CorrectionSource, Strategy
from a11y_mender.errors import EmptyScoresError, UndefinedImprovementError
from a11y_mender.evaluation import (
    SimilarityItem,
    average_violation_score,
    compare_reports,
    corrected_count,
    entry_similarity,
    evaluate_outcomes,
    improvement,
    run_benchmark,
    similarity_items,
    similarity_report,
    unchanged_outcome,
)
from a11y_mender.gateway import LlmGateway, MockProvider
from a11y_mender.models import EvaluationReport
from a11y_mender.scoring import FragmentScorer

# Add tests directory to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from fixtures.oracle import GOOD_ALT, OracleModel

REFERENCES = ("ref-a", "ref-b", "ref-c")
COSINES = (0.5986, 0.8364, 0.6760)


class AngleEmbedder:
    """Embedder placing each reference at a fixed cosine from the answer."""

    def __init__(self):
        self.vectors = {"answer": [1.0, 0.0]}
        for ref, cos in zip(REFERENCES, COSINES, strict=True):
            self.vectors[ref] = [cos, math.sqrt(1 - cos * cos)]

    def embed(self, text):
        if text not in self.vectors:
            raise ValueError(f"no vector for {text!r}")
        return self.vectors[text]


class BrokenEmbedder:
    """Embedder whose endpoint is always down."""

    def embed(self, text):
        raise ValueError("embedding service unavailable")


@pytest.fixture
def corpus(registry):
    """The bundled benchmark dataset."""
    return load_bundled_corpus(registry)


def _outcome(v, final, source=CorrectionSource.LLM1, not_fixed=False):
    return CorrectionOutcome(
        violation=v,
        chosen_html=v.snippet.text,
        source=source,
        scores=CandidateScores(v.score, final),
        flags=CorrectionFlags(not_fixed=not_fixed),
        final_score=final,
        llm_calls=1,
    )


def test_average_violation_score():
    """Test the mean of per-entry scores."""
    assert average_violation_score([5, 4, 3]) == pytest.approx(4.0)
    with pytest.raises(EmptyScoresError):
        average_violation_score([])


def test_improvement():
    """Test the relative drop of the average score."""
    assert improvement(2.0, 0.32) == pytest.approx(0.84)
    assert improvement(4.0, 4.0) == pytest.approx(0.0)
    with pytest.raises(UndefinedImprovementError):
        improvement(0.0, 0.0)


def test_corrected_count(corpus):
    """Test that only fixed entries with score 0 count."""
    a, b, c = corpus.entries[:3]
    outcomes = [
        _outcome(a, 0),
        _outcome(b, 2),
        _outcome(c, 0, CorrectionSource.ORIGINAL, not_fixed=True),
    ]
    assert corrected_count(outcomes) == 1


class TestSimilarity:
    """Tests for the reference similarity study."""

    def test_entry_similarity_is_mean_over_references(self):
        """Test the mean cosine against three references."""
        value = entry_similarity("answer", REFERENCES, AngleEmbedder())
        assert value == pytest.approx(0.7037, abs=1e-4)

    def test_entry_needs_references(self):
        """Test an entry without references."""
        with pytest.raises(ValueError):
            entry_similarity("answer", (), AngleEmbedder())

    def test_report_rows_and_failures(self):
        """Test that failing entries are counted and left out."""
        items = [
            SimilarityItem("vp-05", "image-alt-not-descriptive", "answer", REFERENCES),
            SimilarityItem("vp-99", "image-alt-not-descriptive", "missing", ("x",)),
        ]
        console = _RecordingConsole()
        study = similarity_report(items, AngleEmbedder(), console=console)

        assert study.failures == 1
        assert list(study.per_entry) == ["vp-05"]
        (row,) = study.rows
        assert row.violation_name == "image-alt-not-descriptive"
        assert row.entries == 1
        assert study.overall == pytest.approx(0.7037, abs=1e-4)
        assert [title for title, _ in console.warnings] == ["vp-99"]

    def test_all_failures_leave_no_overall(self):
        """Test a study where every embedding fails."""
        items = [SimilarityItem("vp-05", "image-alt", "answer", REFERENCES)]
        study = similarity_report(items, BrokenEmbedder())
        assert study.overall is None
        assert study.rows == []
        assert study.failures == 1

    def test_semantic_items_compare_alt_text(self, corpus):
        """Test that semantic entries contribute their accessible text."""
        image = next(v for v in corpus.entries if v.human_references)
        fixed = image.snippet.text.replace('alt="image"', f'alt="{GOOD_ALT}"')
        outcome = replace(_outcome(image, 0), chosen_html=fixed)
        others = [_outcome(v, 0) for v in corpus.entries if not v.human_references]

        (item,) = similarity_items([outcome, *others])

        assert item.entry_id == image.id
        assert item.text == GOOD_ALT
        assert item.references == image.human_references


class _RecordingConsole:
    def __init__(self):
        self.warnings = []

    def warning(self, message, title=None):
        self.warnings.append((title, message))


def test_evaluate_outcomes_per_category(corpus):
    """Test overall and per-category aggregation."""
    outcomes = [_outcome(v, 0) for v in corpus.entries]
    outcomes[0] = unchanged_outcome(corpus.entries[0])

    report = evaluate_outcomes(outcomes, strategy=Strategy.GUIDED, model="mock")

    first = corpus.entries[0]
    total = sum(v.score for v in corpus.entries)
    assert report.entries == len(corpus.entries)
    assert report.r_initial == pytest.approx(total / len(corpus.entries))
    assert report.r_fix == pytest.approx(first.score / len(corpus.entries))
    assert report.corrected == len(corpus.entries) - 1
    assert report.llm_calls == len(corpus.entries) - 1
    assert set(report.per_category) == {"syntactic", "layout", "semantic"}
    assert report.per_category["semantic"].improvement == pytest.approx(1.0)
    assert report.per_category["semantic"].count == 1
    assert report.outcomes[0].not_fixed
    assert report.outcomes[0].source is CorrectionSource.ORIGINAL
    assert report.similarity is None


def test_improvement_is_none_without_initial_violations(corpus):
    """Test a run whose entries all start at score 0."""
    v = corpus.entries[0]
    zero = CorrectionOutcome(
        violation=v,
        chosen_html=v.snippet.text,
        source=CorrectionSource.ORIGINAL,
        scores=CandidateScores(0),
        flags=CorrectionFlags(),
        final_score=0,
    )
    report = evaluate_outcomes([zero])
    assert report.improvement is None
    with pytest.raises(EmptyScoresError):
        evaluate_outcomes([])


def test_compare_reports(corpus):
    """Test pairing by id with unchanged fallbacks and orphan warnings."""
    first, second = corpus.entries[:2]
    orphan = _outcome(corpus.entries[2], 0)
    console = _RecordingConsole()

    outcomes = compare_reports(
        [first, second],
        {second.id: _outcome(second, 0), "vp-99": orphan},
        console=console,
    )

    assert [o.violation_id for o in outcomes] == [first.id, second.id]
    assert outcomes[0].flags.not_fixed
    assert outcomes[0].final_score == first.score
    assert outcomes[1].final_score == 0
    assert console.warnings == [("vp-99", "correction has no detected violation")]


class TestRunBenchmark:
    """Tests for whole-corpus runs under each strategy."""

    def _run(self, corpus, registry, strategy, **kwargs):
        responder = OracleModel(corpus.entries, reprompt_only=True)
        gateway = LlmGateway(MockProvider(responder=responder))
        report, outcomes = run_benchmark(
            corpus, strategy, gateway, registry, max_workers=2, **kwargs
        )
        return report, outcomes, gateway

    def test_guided_fixes_every_entry_after_reprompt(self, corpus, registry):
        """Test the staged strategy with one corrective re-prompt."""
        report, outcomes, gateway = self._run(corpus, registry, Strategy.GUIDED)

        assert report.r_fix == 0
        assert report.improvement == pytest.approx(1.0)
        assert report.corrected == len(corpus.entries)
        assert report.model == "mock"
        assert report.strategy is Strategy.GUIDED
        assert gateway.call_count == 2 * len(corpus.entries)
        assert all(o.source is CorrectionSource.LLM2 for o in outcomes)
        assert [o.violation_id for o in outcomes] == [v.id for v in corpus.entries]

    def test_without_reprompt_nothing_improves(self, corpus, registry):
        """Test that the first answer alone leaves the scores unchanged."""
        report, _, gateway = self._run(corpus, registry, Strategy.GUIDED_NO_REPROMPT)
        assert report.r_fix == pytest.approx(report.r_initial)
        assert gateway.call_count <= len(corpus.entries)

    @pytest.mark.parametrize(
        "strategy", [Strategy.CONTEXTUAL, Strategy.REACT, Strategy.ZERO_SHOT]
    )
    def test_guided_is_never_worse_than_baselines(self, corpus, registry, strategy):
        """Test the comparison against single-prompt baselines."""
        guided, _, _ = self._run(corpus, registry, Strategy.GUIDED)
        baseline, _, gateway = self._run(corpus, registry, strategy)

        assert baseline.r_initial == pytest.approx(guided.r_initial)
        assert guided.r_fix <= baseline.r_fix
        assert gateway.call_count <= len(corpus.entries)

    def test_improvement_ordering_across_strategies(self, corpus, registry):
        """Test guided >= guided without re-prompt >= each single-prompt baseline."""
        reports = {s: self._run(corpus, registry, s)[0] for s in Strategy}
        guided = reports.pop(Strategy.GUIDED).improvement
        staged = reports.pop(Strategy.GUIDED_NO_REPROMPT).improvement

        assert guided == pytest.approx(1.0)
        assert guided >= staged
        for strategy, report in reports.items():
            assert staged >= report.improvement, strategy

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_reports_round_trip(self, corpus, registry, strategy):
        """Test that both reports of a run read back unchanged."""
        failing = corpus.entries[0].id
        report, outcomes, _ = self._run(
            corpus, registry, strategy, scorer=_ScorerFailingOn(registry, failing)
        )

        assert EvaluationReport.model_validate_json(dump_report(report)) == report
        text = dump_report(build_report(corpus.entries, outcomes=outcomes))
        loaded = parse_report(text, registry)
        assert [v.id for v in loaded.violations] == [v.id for v in corpus.entries]
        for outcome in outcomes:
            restored = loaded.outcomes[outcome.violation_id]
            assert _outcome_fields(restored) == _outcome_fields(outcome)
        assert loaded.outcomes[failing].error == "scorer unavailable"

    def test_similarity_study_included(self, corpus, registry):
        """Test that entries with references get a similarity value."""
        report, _, _ = self._run(
            corpus, registry, Strategy.GUIDED, embedder=_WordEmbedder()
        )

        assert report.similarity is not None
        assert report.similarity.failures == 0
        (row,) = report.similarity.rows
        assert row.violation_name == "image-alt-not-descriptive"
        scored = [o for o in report.outcomes if o.similarity is not None]
        assert [o.id for o in scored] == ["vp-05"]
        assert 0.0 < scored[0].similarity <= 1.0


class _WordEmbedder:
    """Bag-of-words embedder over a tiny fixed vocabulary."""

    VOCABULARY = ("woman", "vitamin", "box", "label", "pharmacy", "aisle", "store")

    def embed(self, text):
        words = text.lower().split()
        return [float(sum(w.startswith(v) for w in words)) for v in self.VOCABULARY]


class _ScorerFailingOn(FragmentScorer):
    """Scorer that raises for one violation id."""

    def __init__(self, registry, failing_id):
        super().__init__(registry)
        self.failing_id = failing_id

    def score(self, v, html):
        if v.id == self.failing_id:
            raise ValueError("scorer unavailable")
        return super().score(v, html)


def _outcome_fields(outcome):
    return (
        outcome.chosen_html,
        outcome.source,
        outcome.scores,
        outcome.flags,
        outcome.final_score,
        outcome.confidence,
        outcome.explanation,
        outcome.llm_calls,
        outcome.error,
    )

"""
Corrector module for the a11y-mender application.

This module corrects one violation at a time: it asks the model for a fix
with the staged prompt, scores the answer, re-prompts once with the residual
violations when the answer still scores, and finally keeps the best of the
original HTML and the two answers. Baseline strategies send a single prompt
and take the first HTML fragment of the free-form answer.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Protocol

from bs4 import Tag

from .dom import make_soup
from .enums import CorrectionSource, Strategy, Verdict
from .extraction import (
    REACT_ANSWER_LABEL,
    LlmResponse,
    extract_first_html,
    extract_labeled_html,
    parse_llm_response,
)
from .gateway import LlmGateway
from .prompts import (
    build_baseline_prompt,
    build_corrective_reprompt,
    build_initial_correction_prompt,
)
from .screenshots import ScreenshotRef
from .taxonomy import TaxonomyRegistry
from .types import Console
from .violations import DetectedViolation

_MARKUP = re.compile(r"<[A-Za-z/!]")


class CandidateScorer(Protocol):
    """Scores correction candidates of a violation."""

    def residual(self, v: DetectedViolation, html: str) -> list[DetectedViolation]:
        """Violations still present in a candidate."""
        ...

    def score(self, v: DetectedViolation, html: str) -> int:
        """Total violation score of a candidate."""
        ...

    def original_score(self, v: DetectedViolation) -> int:
        """Score of the untouched affected HTML."""
        ...


@dataclass(frozen=True)
class ValidationResult:
    """Shape check of an extracted answer."""

    verdict: Verdict
    detail: str = ""

    @property
    def is_valid(self) -> bool:
        """Whether the answer can be scored and applied."""
        return self.verdict is Verdict.VALID


def validate_llm_correction(text: str | None) -> ValidationResult:
    """
    Check that an answer is a usable HTML correction.

    Args:
        text: Extracted answer, None when nothing was extracted

    Returns:
        Empty for missing or blank text, Valid when at least one element
        parses, Malformed for markup that yields no element and AdviceOnly for
        prose without markup
    """
    if text is None or not text.strip():
        return ValidationResult(Verdict.EMPTY, "no correction returned")
    elements = [t for t in make_soup(text).find_all(True) if isinstance(t, Tag)]
    if elements:
        return ValidationResult(Verdict.VALID, f"{len(elements)} elements")
    if _MARKUP.search(text):
        return ValidationResult(Verdict.MALFORMED, "markup without any element")
    return ValidationResult(Verdict.ADVICE_ONLY, "textual advice only")


@dataclass(frozen=True)
class CandidateScores:
    """Violation scores of the original HTML and the model answers."""

    original: int
    llm1: int | None = None
    llm2: int | None = None


@dataclass(frozen=True)
class CorrectionFlags:
    """What went wrong while correcting."""

    not_fixed: bool = False
    invalid_llm1: bool = False
    invalid_llm2: bool = False


@dataclass(frozen=True)
class CorrectionOutcome:
    """Result of correcting one violation."""

    violation: DetectedViolation = field(repr=False)
    chosen_html: str
    source: CorrectionSource
    scores: CandidateScores
    flags: CorrectionFlags
    final_score: int
    confidence: int | None = None
    explanation: str | None = None
    llm_calls: int = 0
    error: str | None = None

    @property
    def violation_id(self) -> str:
        """Id of the corrected violation."""
        return self.violation.id


def select_best(v_score: int, s1: int | None, s2: int | None) -> CorrectionSource:
    """
    Pick the candidate with the lowest score.

    Ties go to the most recent candidate: LLM2, then LLM1, then the
    original. A None score excludes the candidate.
    """
    candidates = [
        (CorrectionSource.LLM2, s2),
        (CorrectionSource.LLM1, s1),
        (CorrectionSource.ORIGINAL, v_score),
    ]
    scored = [(source, s) for source, s in candidates if s is not None]
    return min(scored, key=lambda item: item[1])[0]


@dataclass
class _Attempt:
    response: LlmResponse
    valid: bool
    score: int | None


class ViolationCorrector:
    """Correct single violations with a given strategy."""

    def __init__(
        self,
        registry: TaxonomyRegistry,
        gateway: LlmGateway,
        scorer: CandidateScorer,
        *,
        screenshot: ScreenshotRef | None = None,
        console: Console | None = None,
    ):
        """
        Initialize the corrector.

        Args:
            registry: Taxonomy used for prompts
            gateway: Gateway for model calls
            scorer: Scorer for candidates
            screenshot: Page screenshot for visual violations without their own
            console: Console for per-violation warnings
        """
        self.registry = registry
        self.gateway = gateway
        self.scorer = scorer
        self.screenshot = screenshot
        self._console = console

    def _attempt(self, v: DetectedViolation, answer: str) -> _Attempt:
        response = parse_llm_response(answer)
        valid = validate_llm_correction(response.extracted_code).is_valid
        code = response.extracted_code
        score = self.scorer.score(v, code) if valid and code is not None else None
        return _Attempt(response, valid, score)

    def _outcome(
        self,
        v: DetectedViolation,
        source: CorrectionSource,
        scores: CandidateScores,
        flags: CorrectionFlags,
        attempts: Sequence[_Attempt],
    ) -> CorrectionOutcome:
        chosen = {CorrectionSource.LLM1: 0, CorrectionSource.LLM2: 1}.get(source)
        if chosen is None:
            return CorrectionOutcome(
                violation=v,
                chosen_html=v.snippet.text,
                source=CorrectionSource.ORIGINAL,
                scores=scores,
                flags=CorrectionFlags(
                    not_fixed=True,
                    invalid_llm1=flags.invalid_llm1,
                    invalid_llm2=flags.invalid_llm2,
                ),
                final_score=scores.original,
                llm_calls=len(attempts),
            )
        attempt = attempts[chosen]
        return CorrectionOutcome(
            violation=v,
            chosen_html=attempt.response.extracted_code or "",
            source=source,
            scores=scores,
            flags=flags,
            final_score=attempt.score if attempt.score is not None else scores.original,
            confidence=attempt.response.confidence,
            explanation=attempt.response.explanation,
            llm_calls=len(attempts),
        )

    def _failed(
        self, v: DetectedViolation, original: int, calls: int, error: Exception
    ) -> CorrectionOutcome:
        if self._console:
            self._console.warning(f"{v.id} not corrected: {error}")
        return CorrectionOutcome(
            violation=v,
            chosen_html=v.snippet.text,
            source=CorrectionSource.ORIGINAL,
            scores=CandidateScores(original=original),
            flags=CorrectionFlags(not_fixed=True),
            final_score=original,
            llm_calls=calls,
            error=str(error),
        )

    def correct(
        self, v: DetectedViolation, *, reprompt: bool = True
    ) -> CorrectionOutcome:
        """
        Run the score-guided correction loop for one violation.

        The first answer is accepted when it scores 0. Otherwise, unless
        ``reprompt`` is off, the residual violations are fed back once and the
        second answer is accepted when it scores 0. Failing that, the best of
        the original and the valid answers is kept. Invalid answers are
        reported with the original score and never chosen.

        Args:
            v: The violation
            reprompt: Whether the corrective re-prompt may be sent

        Returns:
            The outcome; any failure leaves the original HTML in place with
            an error note, so one bad entry never stops a batch
        """
        original = v.score
        attempts: list[_Attempt] = []
        calls = 0
        try:
            original = self.scorer.original_score(v)
            bundle = build_initial_correction_prompt(v, self.registry, self.screenshot)
            calls += 1
            attempts.append(self._attempt(v, self.gateway.complete(bundle)))
            first = attempts[0]
            if first.score == 0:
                return self._outcome(
                    v,
                    CorrectionSource.LLM1,
                    CandidateScores(original, 0),
                    CorrectionFlags(),
                    attempts,
                )
            s1 = first.score if first.valid else original
            if not reprompt:
                return self._outcome(
                    v,
                    select_best(original, first.score, None),
                    CandidateScores(original, s1),
                    CorrectionFlags(invalid_llm1=not first.valid),
                    attempts,
                )
            code = first.response.extracted_code
            residual = (
                self.scorer.residual(v, code) if first.valid and code else [v]
            ) or [v]
            bundle = build_corrective_reprompt(
                v, first.response, residual, self.registry, self.screenshot
            )
            calls += 1
            attempts.append(self._attempt(v, self.gateway.complete(bundle)))
        except Exception as exc:
            return self._failed(v, original, calls, exc)
        second = attempts[1]
        s2 = second.score if second.valid else original
        scores = CandidateScores(original, s1, s2)
        flags = CorrectionFlags(
            invalid_llm1=not first.valid, invalid_llm2=not second.valid
        )
        if second.score == 0:
            return self._outcome(v, CorrectionSource.LLM2, scores, flags, attempts)
        source = select_best(original, first.score, second.score)
        return self._outcome(v, source, scores, flags, attempts)

    def correct_with_baseline(
        self, v: DetectedViolation, strategy: Strategy
    ) -> CorrectionOutcome:
        """
        Correct one violation with a single baseline prompt.

        The first HTML fragment of the answer is the candidate; react answers
        take the fragment after their last "Correct:" label. Answers
        without a valid fragment count as not fixed. Valid fragments are kept
        even when they score worse than the original.
        """
        original = v.score
        calls = 0
        try:
            original = self.scorer.original_score(v)
            bundle = build_baseline_prompt(strategy, v, self.registry, self.screenshot)
            calls += 1
            answer = self.gateway.complete(bundle)
            if strategy is Strategy.REACT:
                code = extract_labeled_html(answer, REACT_ANSWER_LABEL)
            else:
                code = extract_first_html(answer)
            valid = validate_llm_correction(code).is_valid
            score = self.scorer.score(v, code) if valid and code is not None else None
        except Exception as exc:
            return self._failed(v, original, calls, exc)
        attempt = _Attempt(LlmResponse(answer, code), valid, score)
        if score is None:
            return self._outcome(
                v,
                CorrectionSource.ORIGINAL,
                CandidateScores(original, original),
                CorrectionFlags(invalid_llm1=True),
                [attempt],
            )
        return self._outcome(
            v,
            CorrectionSource.LLM1,
            CandidateScores(original, score),
            CorrectionFlags(),
            [attempt],
        )

    def run(self, v: DetectedViolation, strategy: Strategy) -> CorrectionOutcome:
        """Correct one violation with any strategy."""
        match strategy:
            case Strategy.GUIDED:
                return self.correct(v)
            case Strategy.GUIDED_NO_REPROMPT:
                return self.correct(v, reprompt=False)
            case _:
                return self.correct_with_baseline(v, strategy)


def correct_violation(
    v: DetectedViolation,
    registry: TaxonomyRegistry,
    gateway: LlmGateway,
    scorer: CandidateScorer,
    *,
    reprompt: bool = True,
) -> CorrectionOutcome:
    """Correct one violation with the score-guided loop."""
    return ViolationCorrector(registry, gateway, scorer).correct(v, reprompt=reprompt)


def correct_all(
    violations: Sequence[DetectedViolation],
    corrector: ViolationCorrector,
    strategy: Strategy = Strategy.GUIDED,
    *,
    max_workers: int = 4,
) -> list[CorrectionOutcome]:
    """
    Correct violations independently and concurrently.

    Returns:
        Outcomes in the order of ``violations``
    """
    if not violations:
        return []
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        return list(pool.map(lambda v: corrector.run(v, strategy), violations))

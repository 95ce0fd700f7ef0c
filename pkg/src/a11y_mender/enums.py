"""Enumerations for the a11y-mender application."""

from enum import StrEnum


class Category(StrEnum):
    """Top-level class of an accessibility violation type."""

    SYNTACTIC = "syntactic"
    """Missing or malformed markup required for accessibility."""

    SEMANTIC = "semantic"
    """Content whose meaning does not match its purpose or context."""

    LAYOUT = "layout"
    """Visual presentation problems such as contrast or zoom restrictions."""

    @property
    def label(self) -> str:
        """Human-facing label used in prompts and tables."""
        return {
            Category.SYNTACTIC: "Syntax",
            Category.SEMANTIC: "Semantic",
            Category.LAYOUT: "Layout",
        }[self]


class Impact(StrEnum):
    """Severity level of a violation type."""

    COSMETIC = "cosmetic"
    """No real barrier; kept for completeness of the scale."""

    MINOR = "minor"
    """Annoyance with an easy workaround."""

    MODERATE = "moderate"
    """Some content is harder to reach."""

    SERIOUS = "serious"
    """Partial blocker for some users."""

    CRITICAL = "critical"
    """Content is blocked for some users."""

    @property
    def score(self) -> int:
        """Numeric severity from 1 (cosmetic) to 5 (critical)."""
        return list(Impact).index(self) + 1


class SupplementaryKind(StrEnum):
    """Kind of extra evidence a violation type needs for detection or correction."""

    NONE = "none"
    """The HTML snippet is enough."""

    IMAGE = "image"
    """The image referenced by the element."""

    VIDEO = "video"
    """The video referenced by the element."""

    SCREENSHOT = "screenshot"
    """A rendering of the whole page."""

    COLORS = "colors"
    """Resolved foreground and background colors."""

    DOCUMENT_STRUCTURE = "document-structure"
    """The heading outline of the page."""


class DiscardReason(StrEnum):
    """Reason a model-reported semantic finding was dropped."""

    NO_MATCH_IN_DOCUMENT = "no-match-in-document"
    """The quoted snippet does not occur in the page."""

    UNKNOWN_VIOLATION_NAME = "unknown-violation-name"
    """The reported name is not a semantic taxonomy entry."""

    MALFORMED_MARKERS = "malformed-markers"
    """A finding block was opened but never closed."""


class CorrectionSource(StrEnum):
    """Which candidate a correction outcome was taken from."""

    LLM1 = "llm1"
    """The answer to the first correction prompt."""

    LLM2 = "llm2"
    """The answer to the corrective re-prompt."""

    ORIGINAL = "original"
    """The untouched input HTML."""


class Verdict(StrEnum):
    """Shape check of a model answer before it is scored."""

    VALID = "valid"
    """Parseable HTML with at least one element."""

    MALFORMED = "malformed"
    """Markup that does not parse into an element."""

    ADVICE_ONLY = "advice-only"
    """Prose with no markup at all."""

    EMPTY = "empty"
    """Nothing but whitespace."""


class Strategy(StrEnum):
    """Correction prompting strategy."""

    GUIDED = "guided"
    """Metacognitive prompt, one score-guided re-prompt and best-of selection."""

    GUIDED_NO_REPROMPT = "guided-no-reprompt"
    """Metacognitive prompt only; the better of the answer and the input wins."""

    CONTEXTUAL = "contextual"
    """Source code plus the relevant WCAG criteria."""

    REACT = "react"
    """Reason-then-act instruction with fix advice."""

    ZERO_SHOT = "zero-shot"
    """A single accessibility question."""


class SegmentKind(StrEnum):
    """Whether a prompt segment varies between violations."""

    FIXED = "fixed"
    """Identical for every violation of a type."""

    DYNAMIC = "dynamic"
    """Filled from the violation record."""

"""
Fragment scoring for the a11y-mender application.

This module scores correction candidates. Rule-backed violation types are
scored by re-running the rule catalog on the scaffolded fragment. Semantic
types are either re-checked by a detector callback or, by default, judged
fixed once the accessible text they are about has changed.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import replace

from bs4 import Tag

from .dom import make_soup, normalize
from .enums import SupplementaryKind
from .rules import RULES, accessible_name, content_text
from .rules import rule_ids as catalog_rule_ids
from .static_detector import detect_static, scaffold_document
from .taxonomy import TaxonomyRegistry
from .violations import DetectedViolation

SemanticRecheck = Callable[[DetectedViolation, str], list[DetectedViolation]]
"""Re-detect semantic violations of a given type in a candidate fragment."""


def _elements(html: str) -> list[Tag]:
    return [t for t in make_soup(html).find_all(True) if isinstance(t, Tag)]


def _names(html: str, predicate: Callable[[Tag], bool]) -> list[str]:
    return [accessible_name(t) for t in _elements(html) if predicate(t)]


def _is_form_field(tag: Tag) -> bool:
    if tag.name in ("select", "textarea"):
        return True
    kind = str(tag.get("type") or "text").lower()
    return tag.name == "input" and kind not in ("hidden", "submit", "reset", "button")


def _form_labels(html: str) -> list[str]:
    labels = [content_text(t) for t in _elements(html) if t.name == "label"]
    return labels + _names(html, _is_form_field)


_TEXT_EXTRACTORS: dict[str, Callable[[str], list[str]]] = {
    "image-alt-not-descriptive": lambda html: [
        str(t.get("alt") or "") for t in _elements(html) if t.name == "img"
    ],
    "video-captions-not-descriptive": lambda html: [
        str(t.get("label") or t.get("src") or "")
        for t in _elements(html)
        if t.name == "track"
    ],
    "link-text-mismatch": lambda html: _names(
        html, lambda t: t.name == "a" or str(t.get("role") or "") == "link"
    ),
    "button-label-mismatch": lambda html: _names(
        html, lambda t: t.name == "button" or str(t.get("role") or "") == "button"
    ),
    "form-label-mismatch": _form_labels,
    "lang-mismatch": lambda html: [
        str(t.get("lang")) for t in _elements(html) if t.has_attr("lang")
    ],
    "ambiguous-heading": lambda html: [
        content_text(t)
        for t in _elements(html)
        if t.name in ("h1", "h2", "h3", "h4", "h5", "h6")
    ],
    "page-title-not-descriptive": lambda html: [
        content_text(t) for t in _elements(html) if t.name == "title"
    ],
}


def accessible_text(type_name: str, html: str) -> str:
    """
    The accessible text a violation type is about, taken from a fragment.

    For example the alt text of images for ``image-alt-not-descriptive`` or
    the discernible text of links for ``link-text-mismatch``. Types without a
    dedicated extractor fall back to the visible text of the fragment.
    """
    extractor = _TEXT_EXTRACTORS.get(type_name)
    if extractor is not None:
        return " | ".join(v.strip() for v in extractor(html) if v.strip())
    return content_text(make_soup(html))


def accessible_signature(type_name: str, html: str) -> str:
    """A value that changes exactly when a fix for the type touched the fragment."""
    if type_name in _TEXT_EXTRACTORS:
        return accessible_text(type_name, html)
    if type_name == "incorrect-semantic-tag":
        return " ".join(t.name for t in _elements(html))
    return normalize(html)


def context_colors(v: DetectedViolation) -> tuple[str, str] | None:
    """Foreground and background recorded for a violation, if any."""
    supplementary = v.supplementary
    if supplementary is None or supplementary.kind is not SupplementaryKind.COLORS:
        return None
    if supplementary.foreground is None or supplementary.background is None:
        return None
    return supplementary.foreground, supplementary.background


class FragmentScorer:
    """Score correction candidates of a violation."""

    def __init__(
        self,
        registry: TaxonomyRegistry,
        *,
        include_best_practices: bool = False,
        semantic_recheck: SemanticRecheck | None = None,
    ):
        """
        Initialize the scorer.

        Args:
            registry: Taxonomy supplying scores
            include_best_practices: Whether best-practice rules count
            semantic_recheck: Detector callback for semantic types; when None
                a semantic violation counts as fixed once its accessible text
                changed
        """
        self.registry = registry
        self.include_best_practices = include_best_practices
        self.semantic_recheck = semantic_recheck

    def residual(self, v: DetectedViolation, html: str) -> list[DetectedViolation]:
        """
        Violations still present in a candidate fragment.

        Args:
            v: The violation being corrected
            html: Candidate HTML

        Returns:
            Static findings on the scaffolded candidate, plus semantic
            findings of the violation's type
        """
        full = html.lstrip().lower().startswith(("<html", "<!doctype"))
        found = detect_static(
            scaffold_document(html, context_colors(v)),
            v.context,
            self.registry,
            rule_ids=catalog_rule_ids(
                include_best_practices=self.include_best_practices,
                include_page_level=full,
            ),
        )
        if v.type_name in RULES:
            return found
        if self.semantic_recheck is not None:
            return found + self.semantic_recheck(v, html)
        unchanged = accessible_signature(v.type_name, html) == accessible_signature(
            v.type_name, v.snippet.text
        )
        if unchanged:
            found.append(replace(v, id=f"{v.type_name}:candidate"))
        return found

    def score(self, v: DetectedViolation, html: str) -> int:
        """Total violation score of a candidate fragment."""
        return sum(r.score for r in self.residual(v, html))

    def original_score(self, v: DetectedViolation) -> int:
        """
        Score of the untouched affected HTML.

        Never lower than the violation's own score, since the violation was
        found in the full page even if the fragment alone hides it.
        """
        return max(self.score(v, v.snippet.text), v.score)

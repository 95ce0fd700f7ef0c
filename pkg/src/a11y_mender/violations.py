"""
Violation records for the a11y-mender application.

This module provides the in-memory types shared by the detectors, the
corrector and the evaluation harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .dom import HtmlSnippet, NodeRef
from .enums import Category, Impact, SupplementaryKind


@dataclass(frozen=True)
class PageContext:
    """Where a page comes from."""

    url: str = ""
    """Page URL; may be empty."""

    domain: str = ""
    """Topic of the site, e.g. 'Health and Wellness'; may be empty."""

    language_hints: tuple[str, ...] = ()
    """Languages the page is expected to use."""


@dataclass(frozen=True)
class Supplementary:
    """Extra evidence attached to a violation."""

    kind: SupplementaryKind
    ref: str | None = None
    """Image or video URL, screenshot path or heading outline."""

    foreground: str | None = None
    background: str | None = None
    contrast_ratio: float | None = None
    data: bytes | None = field(default=None, compare=False, repr=False)
    """Downloaded image bytes, when requested."""


@dataclass(frozen=True)
class AffectedElement:
    """One affected element: the reported snippet and, when known, its node."""

    snippet: HtmlSnippet
    node: NodeRef | None = None
    path: str | None = None
    """Dot-joined node path, kept when the node itself is gone (loaded reports)."""

    @property
    def node_path(self) -> str | None:
        """Path of the element in its page."""
        if self.node is not None:
            return self.node.path_id
        return self.path


@dataclass(frozen=True)
class DetectedViolation:
    """One violation instance enriched from the taxonomy."""

    id: str
    type_name: str
    category: Category
    affected: tuple[AffectedElement, ...]
    description: str
    impact: Impact
    score: int
    supplementary: Supplementary | None = None
    context: PageContext = field(default_factory=PageContext)
    approximate: bool = False
    fix_advice: str | None = None
    screenshot: Path | None = None
    human_references: tuple[str, ...] | None = None

    @property
    def html_elements(self) -> list[str]:
        """Snippet texts of every affected element."""
        return [element.snippet.text for element in self.affected]

    @property
    def snippet(self) -> HtmlSnippet:
        """The first affected snippet, used as the correction target."""
        return self.affected[0].snippet

    @property
    def node_paths(self) -> list[str]:
        """Known node paths of the affected elements."""
        return [p for element in self.affected if (p := element.node_path) is not None]

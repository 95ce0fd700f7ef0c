"""
Static detector for the a11y-mender application.

This module runs the rule catalog over a document, enriches every raw finding
with its taxonomy entry and computes violation scores of pages and fragments.
"""

from __future__ import annotations

from collections.abc import Iterable

from bs4 import Tag

from .colors import contrast_ratio
from .dom import (
    Document,
    HtmlSnippet,
    make_soup,
    parse_document,
    serialize_node,
    start_tag,
)
from .enums import SupplementaryKind
from .rules import RULES, RuleFinding
from .rules import rule_ids as catalog_rule_ids
from .taxonomy import TaxonomyRegistry
from .violations import AffectedElement, DetectedViolation, PageContext, Supplementary

__all__ = [
    "contrast_ratio",
    "detect_static",
    "scaffold_document",
    "snippet_text",
    "violation_score",
]

_HEAD_ELEMENTS = frozenset({"base", "link", "meta", "script", "style", "title"})


def snippet_text(tag: Tag) -> str:
    """
    Text reported for an affected element.

    The root ``<html>`` element is reported by its start tag only; every
    other element by its full canonical serialization.
    """
    if tag.name == "html":
        return start_tag(tag)
    return serialize_node(tag)


def _enrich(
    doc: Document,
    rule_id: str,
    finding: RuleFinding,
    registry: TaxonomyRegistry,
    ctx: PageContext,
) -> DetectedViolation:
    spec = registry.lookup(rule_id)
    rule = RULES[rule_id]
    affected = tuple(
        AffectedElement(snippet=HtmlSnippet(snippet_text(node.resolve())), node=node)
        for node in finding.nodes
    )
    supplementary = finding.supplementary
    if supplementary is None and spec.supplementary is SupplementaryKind.SCREENSHOT:
        supplementary = Supplementary(kind=spec.supplementary)
    return DetectedViolation(
        id=f"{rule_id}:{finding.nodes[0].path_id}",
        type_name=spec.name,
        category=spec.category,
        affected=affected,
        description=spec.description,
        impact=spec.impact,
        score=spec.score,
        supplementary=supplementary,
        context=ctx,
        approximate=rule.approximate,
        fix_advice=rule.advice,
    )


def detect_static(
    doc: Document,
    ctx: PageContext,
    registry: TaxonomyRegistry,
    *,
    include_best_practices: bool = False,
    rule_ids: Iterable[str] | None = None,
) -> list[DetectedViolation]:
    """
    Detect syntactic and layout violations with the rule catalog.

    Rules whose name is not in the registry are skipped, so a custom taxonomy
    can switch rules off.

    Args:
        doc: The parsed page
        ctx: Page context copied onto every violation
        registry: Taxonomy used for enrichment
        include_best_practices: Whether page-level best-practice rules run
        rule_ids: Explicit rule selection overriding the switches above

    Returns:
        Violations ordered by document position, then rule name
    """
    selected = (
        list(rule_ids)
        if rule_ids is not None
        else catalog_rule_ids(include_best_practices=include_best_practices)
    )
    positions = doc.positions()
    found: list[tuple[int, str, DetectedViolation]] = []
    for rule_id in selected:
        if rule_id not in registry or rule_id not in RULES:
            continue
        for finding in RULES[rule_id].check(doc):
            first = finding.nodes[0].resolve()
            violation = _enrich(doc, rule_id, finding, registry, ctx)
            found.append((positions.get(id(first), -1), rule_id, violation))
    found.sort(key=lambda item: (item[0], item[1]))
    return [violation for _, _, violation in found]


def _is_full_document(text: str) -> bool:
    head = text.lstrip().lower()
    return head.startswith(("<html", "<!doctype"))


def scaffold_document(
    fragment: HtmlSnippet | str, colors: tuple[str, str] | None = None
) -> Document:
    """
    Wrap a fragment in a minimal compliant page so it can be checked alone.

    Fragments that already are a page are parsed as they are. Head-only
    content (meta, link, title, ...) goes into ``<head>``; everything else
    into ``<body>``, which carries the surrounding text and background colors
    when they are known.

    Args:
        fragment: The HTML to wrap
        colors: ``(foreground, background)`` of the fragment's original context

    Returns:
        The parsed scaffold
    """
    text = fragment.text if isinstance(fragment, HtmlSnippet) else fragment
    if _is_full_document(text):
        return parse_document(text)
    top = [c for c in make_soup(text).children if isinstance(c, Tag)]
    head_only = bool(top) and all(t.name in _HEAD_ELEMENTS for t in top)
    body_style = ""
    if colors is not None:
        body_style = f' style="color:{colors[0]};background-color:{colors[1]}"'
    head, body = (text, "") if head_only else ("", text)
    return parse_document(
        f'<html lang="en"><head>{head}</head><body{body_style}>{body}</body></html>'
    )


def violation_score(
    fragment: Document | HtmlSnippet | str,
    registry: TaxonomyRegistry,
    ctx: PageContext | None = None,
    *,
    include_best_practices: bool = False,
    colors: tuple[str, str] | None = None,
) -> int:
    """
    Total violation score of a page or fragment under the static rules.

    Fragments are scaffolded first; page-level rules only judge whole pages.

    Args:
        fragment: A parsed page, or HTML text of a page or fragment
        registry: Taxonomy supplying the scores
        ctx: Page context
        include_best_practices: Whether best-practice rules count
        colors: Context colors for fragments, see ``scaffold_document``

    Returns:
        Sum of the scores of every finding; 0 means compliant
    """
    context = ctx or PageContext()
    if isinstance(fragment, Document):
        violations = detect_static(
            fragment, context, registry, include_best_practices=include_best_practices
        )
    else:
        text = fragment.text if isinstance(fragment, HtmlSnippet) else fragment
        full = _is_full_document(text)
        violations = detect_static(
            scaffold_document(text, colors),
            context,
            registry,
            rule_ids=catalog_rule_ids(
                include_best_practices=include_best_practices, include_page_level=full
            ),
        )
    return sum(v.score for v in violations)

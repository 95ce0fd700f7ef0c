"""
Correction application for the a11y-mender application.

This module writes chosen corrections back into a page, one after another
in input order. A correction that keeps the element's tag and children is
applied as an attribute patch, so independent fixes to one element add up;
anything else replaces the element's subtree. Later corrections to the same
element overwrite earlier ones.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from bs4 import Tag

from .corrector import CorrectionOutcome
from .dom import (
    Document,
    find_segment,
    make_soup,
    normalize,
    parse_document,
    serialize_node,
    start_tag,
)
from .enums import CorrectionSource
from .errors import StaleNodeError
from .types import Console
from .violations import AffectedElement


@dataclass(frozen=True)
class ApplyWarning:
    """A correction, or part of one, that was not applied cleanly."""

    violation_id: str
    message: str


@dataclass
class ApplyResult:
    """The corrected page and what happened on the way."""

    document: Document
    applied: list[str] = field(default_factory=list)
    warnings: list[ApplyWarning] = field(default_factory=list)


def _top_elements(html: str) -> list[Tag]:
    return [c for c in make_soup(html).children if isinstance(c, Tag)]


def _children_form(tag: Tag) -> str:
    return normalize("".join(serialize_node(child) for child in tag.contents))


def _attrs(tag: Tag) -> dict[str, str]:
    return {name: str(value) for name, value in tag.attrs.items()}


class CorrectionApplier:
    """Apply correction outcomes to a page."""

    def __init__(self, console: Console | None = None):
        self._console = console
        self._attribute_owner: dict[tuple[int, str], tuple[str, str]] = {}

    def _warn(self, result: ApplyResult, violation_id: str, message: str) -> None:
        result.warnings.append(ApplyWarning(violation_id, message))
        if self._console:
            self._console.warning(message, title=violation_id)

    def _locate(self, doc: Document, element: AffectedElement) -> Tag | None:
        snippet = element.snippet
        by_path: Tag | None = None
        if element.node_path is not None:
            try:
                by_path = doc.node_from_path_id(element.node_path).resolve()
            except StaleNodeError:
                by_path = None
        if by_path is not None:
            current = (
                start_tag(by_path)
                if snippet.is_start_tag_only
                else serialize_node(by_path)
            )
            if normalize(current) == snippet.normalized:
                return by_path
        found = find_segment(doc, snippet)
        if found is not None:
            return found.resolve()
        expected = _top_elements(snippet.text)
        if by_path is not None and expected and expected[0].name == by_path.name:
            return by_path
        return None

    def _patch_attributes(
        self,
        result: ApplyResult,
        violation_id: str,
        target: Tag,
        reported: Tag | None,
        replacement: Tag,
    ) -> None:
        before = _attrs(reported) if reported is not None else _attrs(target)
        after = _attrs(replacement)
        for name, value in after.items():
            if before.get(name) == value:
                continue
            owner = self._attribute_owner.get((id(target), name))
            if owner is not None and owner[1] != value:
                self._warn(
                    result,
                    violation_id,
                    f"{name}={value!r} overrides {name}={owner[1]!r} "
                    f"set for {owner[0]}",
                )
            target[name] = value
            self._attribute_owner[(id(target), name)] = (violation_id, value)
        for name in before:
            if name not in after and name in target.attrs:
                del target[name]

    def _apply_one(
        self,
        doc: Document,
        result: ApplyResult,
        violation_id: str,
        element: AffectedElement,
        replacement_html: str,
    ) -> bool:
        target = self._locate(doc, element)
        if target is None:
            self._warn(
                result, violation_id, "affected element not found; correction skipped"
            )
            return False
        replacement = _top_elements(replacement_html)
        reported = next(iter(_top_elements(element.snippet.text)), None)
        single = len(replacement) == 1 and replacement[0].name == target.name
        if single and (
            target.name == "html"
            or element.snippet.is_start_tag_only
            or _children_form(replacement[0]) == _children_form(target)
        ):
            self._patch_attributes(
                result, violation_id, target, reported, replacement[0]
            )
            return True
        nodes = list(make_soup(replacement_html).contents)
        if not nodes:
            self._warn(result, violation_id, "empty correction; skipped")
            return False
        _ = target.replace_with(*nodes)
        return True

    def _pairs(self, outcome: CorrectionOutcome) -> list[tuple[AffectedElement, str]]:
        affected = outcome.violation.affected
        tops = _top_elements(outcome.chosen_html)
        if len(affected) > 1 and len(tops) == len(affected):
            return [(a, serialize_node(t)) for a, t in zip(affected, tops, strict=True)]
        return [(affected[0], outcome.chosen_html)]

    def apply(
        self, doc: Document, outcomes: Sequence[CorrectionOutcome]
    ) -> ApplyResult:
        """
        Apply outcomes in order to a copy of the page.

        Outcomes that kept the original HTML change nothing. Targets that
        cannot be found are skipped with a warning; the rest still apply.

        Args:
            doc: The page; left untouched
            outcomes: Corrections in application order

        Returns:
            The corrected copy with the ids applied and the warnings raised
        """
        work = parse_document(doc.serialize(), base_url=doc.base_url)
        result = ApplyResult(document=work)
        self._attribute_owner = {}
        for outcome in outcomes:
            if outcome.source is CorrectionSource.ORIGINAL:
                continue
            applied = False
            for element, html in self._pairs(outcome):
                applied |= self._apply_one(
                    work, result, outcome.violation_id, element, html
                )
            if applied:
                result.applied.append(outcome.violation_id)
        return result


def apply_corrections(
    doc: Document,
    outcomes: Sequence[CorrectionOutcome],
    console: Console | None = None,
) -> Document:
    """Apply outcomes in order and return the corrected page."""
    return CorrectionApplier(console).apply(doc, outcomes).document


__all__ = [
    "ApplyResult",
    "ApplyWarning",
    "CorrectionApplier",
    "apply_corrections",
]

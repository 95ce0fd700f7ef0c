"""
Semantic detector for the a11y-mender application.

This module asks a multimodal model for semantic violations of a page,
parses the marker-delimited findings out of the answer and keeps only those
that can be grounded in the source HTML and named by the taxonomy. Grounded
findings are enriched the same way static findings are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from urllib.parse import urljoin, urlparse

import httpx
from bs4 import Tag

from .dom import Document, HtmlSnippet, NodeRef, find_segment, make_soup
from .enums import Category, DiscardReason, SupplementaryKind
from .errors import PromptError
from .gateway import LlmGateway
from .http_client import HttpxClient
from .prompts import DETECTION_END, DETECTION_START, build_semantic_detection_prompt
from .rules import content_text
from .screenshots import ScreenshotRef
from .static_detector import scaffold_document, snippet_text
from .taxonomy import TaxonomyRegistry, ViolationTypeSpec
from .types import Console, HttpClient, LlmProvider
from .violations import AffectedElement, DetectedViolation, PageContext, Supplementary

_NAME_TOKEN = re.compile(r"[A-Za-z][\w-]*")
_HEADINGS = ("h1", "h2", "h3", "h4", "h5", "h6")

IMAGE_DOWNLOAD_TIMEOUT = 10.0

FIX_ADVICE: dict[str, str] = {
    "image-alt-not-descriptive": (
        "Write alt text that describes what the image shows and why it is there."
    ),
    "video-captions-not-descriptive": (
        "Provide captions that convey the spoken and visual content of the video."
    ),
    "lang-mismatch": "Set the lang attribute to the language the content is in.",
    "link-text-mismatch": "Make the link text name the destination or purpose.",
    "button-label-mismatch": "Make the button label name the action it performs.",
    "form-label-mismatch": "Make the label name the information the field expects.",
    "ambiguous-heading": "Rewrite the heading so it summarizes its section.",
    "page-title-not-descriptive": "Give the page a title naming its topic.",
    "incorrect-semantic-tag": (
        "Replace the element with the HTML element that expresses its role."
    ),
    "color-only-distinction": (
        "Add a text or shape cue next to the color that carries the meaning."
    ),
}


@dataclass(frozen=True)
class SemanticFinding:
    """A model-reported finding before or after grounding."""

    snippet: HtmlSnippet
    violation_name: str
    grounded: bool = False
    discard_reason: DiscardReason | None = None
    node: NodeRef | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SemanticDetectionResult:
    """Grounded violations plus the findings that were dropped."""

    violations: list[DetectedViolation]
    discarded: list[SemanticFinding]


def _malformed(snippet: str) -> SemanticFinding:
    return SemanticFinding(
        snippet=HtmlSnippet(snippet.strip()),
        violation_name="",
        discard_reason=DiscardReason.MALFORMED_MARKERS,
    )


def parse_semantic_findings(llm_text: str) -> list[SemanticFinding]:
    """
    Parse ``[START]snippet[END] violation-name`` findings out of an answer.

    Markers are scanned left to right. A block that is never closed, or one
    interrupted by another opening marker, or one with no name on the line
    after its closing marker becomes a MalformedMarkers finding.

    Args:
        llm_text: The model answer

    Returns:
        Ungrounded findings in answer order
    """
    findings: list[SemanticFinding] = []
    position = 0
    while (start := llm_text.find(DETECTION_START, position)) >= 0:
        body_start = start + len(DETECTION_START)
        end = llm_text.find(DETECTION_END, body_start)
        next_start = llm_text.find(DETECTION_START, body_start)
        if end < 0:
            findings.append(_malformed(llm_text[body_start:]))
            break
        if 0 <= next_start < end:
            findings.append(_malformed(llm_text[body_start:next_start]))
            position = next_start
            continue
        snippet = llm_text[body_start:end]
        after = end + len(DETECTION_END)
        line_end = llm_text.find("\n", after)
        tail = llm_text[after : line_end if line_end >= 0 else len(llm_text)]
        name = _NAME_TOKEN.search(tail.replace(DETECTION_START, "\n").split("\n")[0])
        if name is None:
            findings.append(_malformed(snippet))
        else:
            findings.append(
                SemanticFinding(
                    snippet=HtmlSnippet(snippet.strip()), violation_name=name.group(0)
                )
            )
        position = after
    return findings


def _has_markup(snippet: HtmlSnippet) -> bool:
    return any(isinstance(t, Tag) for t in make_soup(snippet.text).find_all(True))


def _semantic_spec(registry: TaxonomyRegistry, name: str) -> ViolationTypeSpec | None:
    spec = registry.find(name)
    if spec is None or spec.category is not Category.SEMANTIC:
        return None
    return spec


def ground_findings(
    findings: list[SemanticFinding], doc: Document, registry: TaxonomyRegistry
) -> tuple[list[SemanticFinding], list[SemanticFinding]]:
    """
    Split findings into grounded ones and discarded ones.

    A finding is kept when its snippet is markup found in the document and
    its name is a semantic taxonomy entry (matched case-insensitively).

    Returns:
        ``(kept, discarded)``; kept findings carry the canonical name and node
    """
    kept: list[SemanticFinding] = []
    discarded: list[SemanticFinding] = []
    for finding in findings:
        if finding.discard_reason is not None:
            discarded.append(finding)
            continue
        node = None
        if _has_markup(finding.snippet):
            node = find_segment(doc, finding.snippet)
        if node is None:
            discarded.append(
                replace(finding, discard_reason=DiscardReason.NO_MATCH_IN_DOCUMENT)
            )
            continue
        spec = _semantic_spec(registry, finding.violation_name)
        if spec is None:
            discarded.append(
                replace(finding, discard_reason=DiscardReason.UNKNOWN_VIOLATION_NAME)
            )
            continue
        kept.append(
            replace(finding, violation_name=spec.name, grounded=True, node=node)
        )
    return kept, discarded


def _resolve_url(src: str, doc: Document, ctx: PageContext) -> str:
    for base in (doc.base_url, ctx.url):
        if urlparse(base).scheme in ("http", "https"):
            return urljoin(base, src)
    return src


def _first(tag: Tag, names: tuple[str, ...]) -> Tag | None:
    if tag.name in names:
        return tag
    found = tag.find(list(names))
    return found if isinstance(found, Tag) else None


def heading_outline(doc: Document) -> str:
    """One line per heading, indented by level, e.g. ``  h2: Vitamins``."""
    lines: list[str] = []
    for tag in doc.elements():
        if tag.name in _HEADINGS:
            level = int(tag.name[1])
            lines.append(f"{'  ' * (level - 1)}{tag.name}: {content_text(tag)}")
    return "\n".join(lines)


class SemanticDetector:
    """Detect semantic violations with a multimodal model."""

    gateway: LlmGateway
    registry: TaxonomyRegistry
    download_images: bool
    http_client: HttpClient
    _console: Console | None

    def __init__(
        self,
        gateway: LlmGateway | LlmProvider,
        registry: TaxonomyRegistry,
        *,
        download_images: bool = False,
        http_client: HttpClient | None = None,
        console: Console | None = None,
    ):
        """
        Initialize the detector.

        Args:
            gateway: Gateway (or bare provider) used for the detection prompt
            registry: Taxonomy with the semantic entries
            download_images: Whether image supplementary URLs are fetched
            http_client: Client for image downloads
            console: Console for warnings
        """
        if not isinstance(gateway, LlmGateway):
            gateway = LlmGateway(gateway)
        self.gateway = gateway
        self.registry = registry
        self.download_images = download_images
        self.http_client = http_client or HttpxClient()
        self._console = console

    def _download(self, url: str) -> bytes | None:
        try:
            page = self.http_client.get(url, timeout=IMAGE_DOWNLOAD_TIMEOUT)
        except (httpx.HTTPError, OSError, ValueError) as exc:
            if self._console:
                self._console.warning(f"Could not download {url}: {exc}")
            return None
        return page.content

    def _supplementary(
        self,
        spec: ViolationTypeSpec,
        tag: Tag,
        doc: Document,
        ctx: PageContext,
        screenshot: ScreenshotRef | None,
    ) -> Supplementary | None:
        match spec.supplementary:
            case SupplementaryKind.IMAGE:
                image = _first(tag, ("img",))
                src = str(image.get("src") or "") if image is not None else ""
                if not src:
                    return Supplementary(kind=spec.supplementary)
                url = _resolve_url(src, doc, ctx)
                data = self._download(url) if self.download_images else None
                return Supplementary(kind=spec.supplementary, ref=url, data=data)
            case SupplementaryKind.VIDEO:
                media = _first(tag, ("video", "source", "track"))
                src = str(media.get("src") or "") if media is not None else ""
                ref = _resolve_url(src, doc, ctx) if src else None
                return Supplementary(kind=spec.supplementary, ref=ref)
            case SupplementaryKind.SCREENSHOT:
                ref = str(screenshot.path) if screenshot is not None else None
                return Supplementary(kind=spec.supplementary, ref=ref)
            case SupplementaryKind.DOCUMENT_STRUCTURE:
                return Supplementary(kind=spec.supplementary, ref=heading_outline(doc))
            case _:
                return None

    def _enrich(
        self,
        finding: SemanticFinding,
        node: NodeRef,
        doc: Document,
        ctx: PageContext,
        screenshot: ScreenshotRef | None,
    ) -> DetectedViolation:
        spec = self.registry.lookup(finding.violation_name)
        tag = node.resolve()
        return DetectedViolation(
            id=f"{spec.name}:{node.path_id}",
            type_name=spec.name,
            category=spec.category,
            affected=(
                AffectedElement(snippet=HtmlSnippet(snippet_text(tag)), node=node),
            ),
            description=spec.description,
            impact=spec.impact,
            score=spec.score,
            supplementary=self._supplementary(spec, tag, doc, ctx, screenshot),
            context=ctx,
            fix_advice=FIX_ADVICE.get(spec.name),
            screenshot=screenshot.path if screenshot is not None else None,
        )

    def detect(
        self, doc: Document, screenshot: ScreenshotRef, ctx: PageContext
    ) -> SemanticDetectionResult:
        """
        Detect the semantic violations of a page.

        Args:
            doc: The page
            screenshot: Rendered view of the page
            ctx: Page URL and domain

        Returns:
            Grounded violations in document order plus the discarded findings

        Raises:
            PromptError: If the taxonomy has no semantic entries
            ScreenshotError: If the screenshot cannot be read
            ProviderError: If the model call fails
        """
        bundle = build_semantic_detection_prompt(doc, screenshot, self.registry, ctx)
        answer = self.gateway.complete(bundle)
        kept, discarded = ground_findings(
            parse_semantic_findings(answer), doc, self.registry
        )
        positions = doc.positions()
        seen: set[tuple[str, str]] = set()
        ordered: list[tuple[int, DetectedViolation]] = []
        for finding in kept:
            node = finding.node
            key = (node.path_id if node else "", finding.violation_name)
            if node is None or key in seen:
                continue
            seen.add(key)
            violation = self._enrich(finding, node, doc, ctx, screenshot)
            ordered.append((positions.get(id(node.resolve()), -1), violation))
        ordered.sort(key=lambda item: (item[0], item[1].type_name))
        if discarded and self._console:
            self._console.debug(f"Discarded {len(discarded)} ungrounded findings")
        return SemanticDetectionResult([v for _, v in ordered], discarded)

    def recheck(self, v: DetectedViolation, html: str) -> list[DetectedViolation]:
        """
        Re-detect violations of ``v``'s type in a correction candidate.

        Used as the scorer's semantic callback; the candidate is checked inside
        a minimal page against the violation's screenshot.

        Raises:
            PromptError: If the violation has no screenshot
        """
        if v.screenshot is None:
            raise PromptError(f"re-checking {v.type_name} needs a screenshot")
        doc = scaffold_document(html)
        result = self.detect(doc, ScreenshotRef(v.screenshot), v.context)
        return [r for r in result.violations if r.type_name == v.type_name]


def detect_semantic(
    doc: Document,
    screenshot: ScreenshotRef,
    ctx: PageContext,
    registry: TaxonomyRegistry,
    llm: LlmGateway | LlmProvider,
) -> list[DetectedViolation]:
    """Detect grounded semantic violations of a page; see ``SemanticDetector``."""
    return SemanticDetector(llm, registry).detect(doc, screenshot, ctx).violations

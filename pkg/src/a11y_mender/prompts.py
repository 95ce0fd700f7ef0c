"""
Prompt templates for the a11y-mender application.

This module provides every prompt the application sends: the staged
correction prompt, the corrective re-prompt, the semantic detection prompt
and the three baseline prompts. Templates are plain strings whose
``{placeholders}`` become dynamic segments; everything around them is fixed
text that stays byte-identical across violations of the same type.
"""

from __future__ import annotations

import hashlib
import string
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from .dom import Document
from .enums import Category, SegmentKind, Strategy, SupplementaryKind
from .errors import PromptError
from .extraction import (
    CODE_END,
    CODE_START,
    CONFIDENCE_END,
    CONFIDENCE_START,
    EXPLANATION_END,
    EXPLANATION_START,
    LlmResponse,
)
from .screenshots import ImageAttachment, ScreenshotRef
from .taxonomy import CATEGORY_DESCRIPTIONS, TaxonomyRegistry, ViolationTypeSpec
from .violations import DetectedViolation, PageContext

DETECTION_START = "[START]"
DETECTION_END = "[END]"


@dataclass(frozen=True)
class MarkerProtocol:
    """Markers the model is asked to wrap its answer parts in."""

    code_start: str
    code_end: str
    confidence_start: str | None = None
    confidence_end: str | None = None
    explanation_start: str | None = None
    explanation_end: str | None = None


CORRECTION_MARKERS = MarkerProtocol(
    code_start=CODE_START,
    code_end=CODE_END,
    confidence_start=CONFIDENCE_START,
    confidence_end=CONFIDENCE_END,
    explanation_start=EXPLANATION_START,
    explanation_end=EXPLANATION_END,
)
DETECTION_MARKERS = MarkerProtocol(code_start=DETECTION_START, code_end=DETECTION_END)


@dataclass(frozen=True)
class PromptSegment:
    """One piece of prompt text."""

    kind: SegmentKind
    text: str
    slot: str | None = None
    """Placeholder name of dynamic segments."""


@dataclass(frozen=True)
class PromptBundle:
    """A prompt ready to send: text segments, images and expected markers."""

    template: str
    persona: str
    segments: tuple[PromptSegment, ...]
    attachments: tuple[ImageAttachment, ...] = ()
    markers: MarkerProtocol | None = None

    def slot(self, name: str) -> str | None:
        """Value of the first dynamic segment filled from a placeholder."""
        return next((s.text for s in self.segments if s.slot == name), None)

    def fixed_segments(self) -> list[str]:
        """Texts of the fixed segments, in order."""
        return [s.text for s in self.segments if s.kind is SegmentKind.FIXED]

    def render(self) -> str:
        """Full prompt text, persona first."""
        body = "".join(segment.text for segment in self.segments)
        if not self.persona:
            return body
        return f"{self.persona}\n\n{body}"

    def fingerprint(self) -> str:
        """Stable hash of the rendered text and attachment digests."""
        digest = hashlib.sha256(self.render().encode("utf-8"))
        for attachment in self.attachments:
            digest.update(b"\x00")
            digest.update(attachment.digest.encode("ascii"))
        return digest.hexdigest()


class _BundleBuilder:
    """Accumulate segments of one bundle."""

    _formatter = string.Formatter()

    def __init__(
        self, template: str, persona: str, markers: MarkerProtocol | None
    ) -> None:
        self.template = template
        self.persona = persona
        self.markers = markers
        self.segments: list[PromptSegment] = []
        self.attachments: list[ImageAttachment] = []

    def fixed(self, text: str) -> None:
        self.segments.append(PromptSegment(SegmentKind.FIXED, text))

    def add(self, text: str, **slots: str) -> None:
        for literal, name, _, _ in self._formatter.parse(text):
            if literal:
                self.fixed(literal)
            if name is None:
                continue
            if name not in slots:
                raise PromptError(f"{self.template} prompt is missing '{name}'")
            self.segments.append(PromptSegment(SegmentKind.DYNAMIC, slots[name], name))

    def attach(self, attachment: ImageAttachment) -> None:
        self.attachments.append(attachment)

    def build(self) -> PromptBundle:
        return PromptBundle(
            template=self.template,
            persona=self.persona,
            segments=tuple(self.segments),
            attachments=tuple(self.attachments),
            markers=self.markers,
        )


# ----------------------------------------------------------------------
# Staged correction prompt
# ----------------------------------------------------------------------
PERSONA = (
    "You are a Web accessibility expert with strong HTML skills and a deep "
    "commitment to fixing accessibility violations. You analyze Web pages, "
    "identify issues, and provide corrected HTML that meets WCAG 2.1 standards.\n"
    "You resolve problems like missing alt text, poor heading structure, "
    "non-semantic elements, inaccessible forms, and color contrast issues.\n"
    "You transform flawed code into compliant, clean HTML that works with "
    "assistive technologies and is fully keyboard-navigable and "
    "screen-reader-friendly.\n"
    "Your mission is to deliver expert, immediately usable HTML fixes to make "
    "the Web inclusive for all users."
)

COMPREHENSION = (
    "Clarify your understanding of the following Web accessibility violation:\n"
)

VIOLATION_DETAILS = """\
Category: {category}
Category description: {category_description}
Violation name: {violation_name}
Violation description: {violation_description}
Web page URL: {url}
HTML element(s) affected:
{html_element}
Impact: {impact}
"""

IMPACT_SCALE = (
    "Impact is a rating determined by the severity of the violation, indicating "
    "the extent to which it hinders user interaction with the Web content. The "
    "scale is [cosmetic, minor, moderate, serious, critical]\n"
)

COLOR_CONTEXT = """\
Current colors: text {foreground} on background {background}, \
contrast ratio {contrast_ratio}:1.
"""

SCREENSHOT_TASKS = """\
Prioritize the attached screenshot of the Web page (which visually shows the \
UI element with a possible Web accessibility violation).
Your tasks:
1. Interpret the visual content of the attached image.
2. Identify the UI element (e.g., a button or icon) shown in the image.
3. Determine whether the element is accessible (i.e., if an image element has \
a meaningful alt text)
4. Compare your findings with the corresponding HTML provided and highlight \
any mismatches.
5. Suggest an accessibility-compliant fix if there's a violation.
"""

SCREENSHOT_SLOT = "{screenshot}\n"

PRELIMINARY_JUDGMENT = (
    "Based on your understanding, provide a preliminary correction for the Web "
    "accessibility violation based on the following WCAG guideline(s):\n"
)

WCAG_SLOT = "{wcag}\n"

COMPLETE_CODE = (
    "Make sure your generated code corrects the Web accessibility violation "
    "without introducing new accessibility violations. Ensure you generate the "
    "complete corrected code, not just a snippet.\n"
)

CRITICAL_EVALUATION = (
    "Critically assess your preliminary correction, make sure to correct the "
    "initial Web accessibility violation without introducing new Web "
    "accessibility violations. Only make corrections if the previous answer is "
    "incorrect. Make sure your generated code corrects the Web accessibility "
    "violation without introducing new accessibility violations.\n"
)

_CODE_MARKER_REQUEST = (
    "Enclose your corrected HTML code to replace the initial code with "
    f'accessibility violations between these two marker strings: "{CODE_START}" '
    f'as the first line and "{CODE_END}" as the last line.\n'
)

DECISION_CONFIRMATION = (
    "Confirm your final decision on whether the correction is accurate or not "
    "and provide the reasoning for your decision. Only suggest further "
    "corrections if the initial response contains errors. Make sure your "
    "generated code corrects the Web accessibility violation without "
    "introducing new accessibility violations. " + _CODE_MARKER_REQUEST
)

CONFIDENCE_ASSESSMENT = (
    "Evaluate your confidence (0-100%) in your correction, enclose your "
    f'confidence score between these two marker strings: "{CONFIDENCE_START}" '
    f'as first line and "{CONFIDENCE_END}" as last line. Provide an explanation '
    "for this confidence level; enclose your explanation between these two "
    f'marker strings: "{EXPLANATION_START}" as the first line and '
    f'"{EXPLANATION_END}" as last line.\n'
)

# ----------------------------------------------------------------------
# Corrective re-prompt
# ----------------------------------------------------------------------
_REPROMPT_RULES = (
    "- Analyze only the provided HTML snippet and metadata. Do not infer or "
    "invent additional structure, styles, or UI elements beyond what is given.\n"
    "- Avoid introducing or rewriting content not present in the HTML. Do not "
    "add or alter CSS, forms, headers, sections, scripts, or attributes "
    "unnecessarily. Modify only the minimal code needed to resolve the "
    "violation.\n"
    "- Return only the modified lines in a fenced code block. Leave all other "
    "parts of the HTML unchanged.\n"
    "- Justify every accessibility concern directly with observable evidence "
    "from the HTML.\n"
)

REPROMPT_OPENING = (
    "You are analyzing a Web accessibility issue using a snippet of Affected "
    "HTML Element(s) and related metadata.\n"
    "Follow these strict rules:\n" + _REPROMPT_RULES + COMPREHENSION
)

REPROMPT_VISUAL_OPENING = (
    "You are analyzing a Web accessibility issue using a snippet of Affected "
    "HTML Element(s), Web page screenshot and related metadata. The screenshot "
    "reflects exactly what is rendered to users.\n"
    "Follow these strict rules:\n"
    "- Prioritize visual analysis: list at least three specific details "
    "observable in the image (e.g., color, shape, text, or spatial "
    "arrangement).\n" + _REPROMPT_RULES + COMPREHENSION
)

REPROMPT_FEEDBACK = """\
Your previous correction did not fully resolve the violation.
Your previous corrected code:
{previous_output}
Accessibility violations still present in it, with their violation scores:
{feedback}
"""

REPROMPT_DECISION_CONFIRMATION = (
    "Confirm your final decision on whether the correction is accurate or not, "
    "and provide the reasoning for your decision. Only suggest further "
    "corrections if the initial response contains errors. Make sure your "
    "generated code corrects the Web accessibility violation without "
    "introducing new accessibility violations. " + _CODE_MARKER_REQUEST
)

NO_PREVIOUS_OUTPUT = "(the previous answer contained no usable HTML)"

# ----------------------------------------------------------------------
# Semantic detection prompt
# ----------------------------------------------------------------------
DETECTION_PERSONA = (
    "You are a Web accessibility expert. Your task is to detect semantic "
    "accessibility violations in the given HTML Web page. These accessibility "
    "violations are often not detectable by standard automated tools and "
    "require interpretation of the content's meaning and user context"
)

DETECTION_DEFINITION = (
    "A semantic violation occurs when:\n"
    "- Attributes like alt text, language, or link/button labels are present "
    "but do not provide meaningful information.\n"
    "- Visual or multimedia content is not described in a way that conveys its "
    "purpose to users with disabilities.\n"
)

DETECTION_CONTEXT = """\
Use the following context in your analysis:
- Domain:
{domain}
- URL:
{url}
"""

DETECTION_INPUTS = (
    "You are provided with:\n"
    "- The HTML code of the Web page to analyze.\n"
    "- The full semantic accessibility violation taxonomy.\n"
)

DETECTION_SCREENSHOT_INPUT = (
    "- A screenshot of the rendered view of the Web page.\n"
)

DETECTION_PAGE = """\
{html}
{screenshot}
"""

DETECTION_INSTRUCTION = (
    "Now, review the HTML and supplementary data. List all semantic "
    "accessibility violations you detect, and for each:\n"
    "1. Identify the affected HTML element. Enclose the exact HTML snippet "
    f"using the markers {DETECTION_START} and {DETECTION_END}.\n"
    "2. Specify the violation name.\n"
)

DETECTION_ANSWER_FORMAT = f"""\
Write the violation name right after {DETECTION_END} on the same line, one \
violation per line, for example:
{DETECTION_START}<img src="team.jpg" alt="photo">{DETECTION_END} \
image-alt-not-descriptive
If the page has no semantic violation, answer NONE.
"""

# ----------------------------------------------------------------------
# Baselines
# ----------------------------------------------------------------------
CONTEXTUAL_REQUEST = (
    "Given the following source code, can you fix the accessibility issue "
    "related to the success criteria according to WCAG 2.1?\n"
)

CONTEXTUAL_VISUAL_REQUEST = (
    "Given the following Web page screenshot and source code, can you fix the "
    "accessibility issue related to the success criteria according to WCAG 2.1?\n"
)

CONTEXTUAL_SLOTS = "{html}\n{wcag}\n"

REACT_REQUEST = """\
You are a helpful assistant who will correct accessibility issues of a provided \
Website.
Provide your thought before you provide a fixed version of the results.
E.g. Incorrect: <span>Search</span>
Thought: because ... I will ...
Correct: <span class="DocSearch-Button-Placeholder">Search</span>
You are operating on this Website:
"""

REACT_SLOTS = "{url}\n{violation_name}\n{violation_description}\n{fix_advice}\n{html}\n"

ZERO_SHOT_REQUEST = "Is the following HTML code accessible?\n"

ZERO_SHOT_SLOTS = "{html}\n"

BASELINE_SCREENSHOT = "Given the Web page screenshot:\n"

_BASELINE_TEMPLATES = {
    Strategy.CONTEXTUAL: (CONTEXTUAL_REQUEST, CONTEXTUAL_SLOTS),
    Strategy.REACT: (REACT_REQUEST, REACT_SLOTS),
    Strategy.ZERO_SHOT: (ZERO_SHOT_REQUEST, ZERO_SHOT_SLOTS),
}
_REACT_REQUIRED = ("url", "violation_name", "violation_description", "fix_advice")


def _screenshot_for(
    v: DetectedViolation, screenshot: ScreenshotRef | None
) -> ScreenshotRef | None:
    if screenshot is not None:
        return screenshot
    if v.screenshot is not None:
        return ScreenshotRef(Path(v.screenshot))
    return None


def _required_screenshot(
    v: DetectedViolation, spec: ViolationTypeSpec, screenshot: ScreenshotRef | None
) -> ScreenshotRef | None:
    if not spec.is_visual:
        return None
    ref = _screenshot_for(v, screenshot)
    if ref is None:
        raise PromptError(f"{v.type_name} needs a screenshot but none is available")
    return ref


def _violation_slots(
    v: DetectedViolation, registry: TaxonomyRegistry
) -> dict[str, str]:
    spec = registry.lookup(v.type_name)
    return {
        "category": v.category.label,
        "category_description": CATEGORY_DESCRIPTIONS[v.category],
        "violation_name": v.type_name,
        "violation_description": v.description,
        "url": v.context.url,
        "html_element": "\n".join(v.html_elements),
        "impact": v.impact.value.capitalize(),
        "wcag": registry.render_guidelines(spec),
    }


def _add_colors(builder: _BundleBuilder, v: DetectedViolation) -> None:
    supplementary = v.supplementary
    if (
        supplementary is not None
        and supplementary.kind is SupplementaryKind.COLORS
        and supplementary.foreground is not None
        and supplementary.background is not None
    ):
        builder.add(
            COLOR_CONTEXT,
            foreground=supplementary.foreground,
            background=supplementary.background,
            contrast_ratio=f"{supplementary.contrast_ratio or 0:.2f}",
        )


def _add_judgment_stages(
    builder: _BundleBuilder, slots: dict[str, str], decision: str
) -> None:
    builder.fixed(PRELIMINARY_JUDGMENT)
    builder.add(WCAG_SLOT, **slots)
    builder.fixed(COMPLETE_CODE)
    builder.fixed(CRITICAL_EVALUATION)
    builder.fixed(decision)
    builder.fixed(CONFIDENCE_ASSESSMENT)


def build_initial_correction_prompt(
    v: DetectedViolation,
    registry: TaxonomyRegistry,
    screenshot: ScreenshotRef | None = None,
) -> PromptBundle:
    """
    Build the staged correction prompt for one violation.

    Args:
        v: The violation to correct
        registry: Taxonomy supplying the WCAG guidelines
        screenshot: Page screenshot; defaults to the violation's own

    Returns:
        The prompt bundle, with the screenshot attached for visual semantic types

    Raises:
        PromptError: If a visual semantic violation has no screenshot
        ScreenshotError: If the screenshot cannot be read
    """
    spec = registry.lookup(v.type_name)
    ref = _required_screenshot(v, spec, screenshot)
    slots = _violation_slots(v, registry)
    builder = _BundleBuilder("initial-correction", PERSONA, CORRECTION_MARKERS)
    builder.fixed(COMPREHENSION)
    builder.add(VIOLATION_DETAILS, **slots)
    builder.fixed(IMPACT_SCALE)
    _add_colors(builder, v)
    if ref is not None:
        builder.fixed(SCREENSHOT_TASKS)
        builder.add(SCREENSHOT_SLOT, screenshot=ref.describe())
        builder.attach(ref.load())
    _add_judgment_stages(builder, slots, DECISION_CONFIRMATION)
    return builder.build()


def _feedback_lines(residual: Iterable[DetectedViolation]) -> str:
    return "\n".join(f"{r.type_name} (score {r.score})" for r in residual)


def build_corrective_reprompt(
    v: DetectedViolation,
    prior: LlmResponse,
    residual: list[DetectedViolation],
    registry: TaxonomyRegistry,
    screenshot: ScreenshotRef | None = None,
) -> PromptBundle:
    """
    Build the feedback prompt sent when the first correction still scores.

    Args:
        v: The violation being corrected
        prior: The first answer
        residual: Violations found in the first answer's code
        registry: Taxonomy supplying the WCAG guidelines
        screenshot: Page screenshot; defaults to the violation's own

    Returns:
        The prompt bundle

    Raises:
        PromptError: If ``residual`` is empty or a needed screenshot is missing
    """
    if not residual:
        raise PromptError("a corrective re-prompt needs a residual violation")
    spec = registry.lookup(v.type_name)
    ref = _required_screenshot(v, spec, screenshot)
    slots = _violation_slots(v, registry)
    builder = _BundleBuilder("corrective-reprompt", PERSONA, CORRECTION_MARKERS)
    builder.fixed(REPROMPT_OPENING if ref is None else REPROMPT_VISUAL_OPENING)
    builder.add(VIOLATION_DETAILS, **slots)
    if ref is not None:
        builder.add(SCREENSHOT_SLOT, screenshot=ref.describe())
        builder.attach(ref.load())
    builder.fixed(IMPACT_SCALE)
    _add_colors(builder, v)
    builder.add(
        REPROMPT_FEEDBACK,
        previous_output=prior.extracted_code or NO_PREVIOUS_OUTPUT,
        feedback=_feedback_lines(residual),
    )
    _add_judgment_stages(builder, slots, REPROMPT_DECISION_CONFIRMATION)
    return builder.build()


def _semantic_listing(specs: list[ViolationTypeSpec]) -> str:
    return "".join(f"  - {spec.name}: {spec.description}\n" for spec in specs)


def build_semantic_detection_prompt(
    doc: Document,
    screenshot: ScreenshotRef,
    registry: TaxonomyRegistry,
    ctx: PageContext,
) -> PromptBundle:
    """
    Build the prompt asking the model for semantic violations of a page.

    Args:
        doc: The page
        screenshot: Rendered view of the page
        registry: Taxonomy whose semantic entries are listed
        ctx: Page URL and domain

    Returns:
        The prompt bundle with the screenshot attached

    Raises:
        PromptError: If the registry has no semantic entries
        ScreenshotError: If the screenshot cannot be read
    """
    specs = registry.list_types(Category.SEMANTIC)
    if not specs:
        raise PromptError("the taxonomy has no semantic violation types")
    attachment = screenshot.load()
    builder = _BundleBuilder("semantic-detection", DETECTION_PERSONA, DETECTION_MARKERS)
    builder.fixed(DETECTION_DEFINITION)
    builder.add(DETECTION_CONTEXT, domain=ctx.domain, url=ctx.url)
    builder.fixed(DETECTION_INPUTS)
    builder.fixed(_semantic_listing(specs))
    builder.fixed(DETECTION_SCREENSHOT_INPUT)
    builder.add(
        DETECTION_PAGE,
        html=doc.source_text or doc.serialize(),
        screenshot=screenshot.describe(),
    )
    builder.attach(attachment)
    builder.fixed(DETECTION_INSTRUCTION)
    builder.fixed(DETECTION_ANSWER_FORMAT)
    return builder.build()


def build_baseline_prompt(
    strategy: Strategy,
    v: DetectedViolation,
    registry: TaxonomyRegistry,
    screenshot: ScreenshotRef | None = None,
) -> PromptBundle:
    """
    Build the prompt of a baseline strategy.

    Visual semantic violations get the screenshot block when a screenshot is
    available; baselines run without one otherwise.

    Args:
        strategy: One of the baseline strategies
        v: The violation to correct
        registry: Taxonomy supplying the WCAG criteria
        screenshot: Page screenshot; defaults to the violation's own

    Returns:
        The prompt bundle; answers are free-form

    Raises:
        PromptError: If the strategy is not a baseline or a required value is
            missing
    """
    templates = _BASELINE_TEMPLATES.get(strategy)
    if templates is None:
        raise PromptError(f"{strategy} is not a baseline strategy")
    request, slot_rows = templates
    spec = registry.lookup(v.type_name)
    slots = {
        "html": "\n".join(v.html_elements),
        "wcag": registry.render_guidelines(spec),
        "url": v.context.url,
        "violation_name": v.type_name,
        "violation_description": v.description,
        "fix_advice": v.fix_advice or "",
    }
    if strategy is Strategy.REACT:
        missing = [name for name in _REACT_REQUIRED if not slots[name]]
        if missing:
            raise PromptError(f"react prompt is missing {', '.join(missing)}")
    ref = _screenshot_for(v, screenshot) if spec.is_visual else None
    builder = _BundleBuilder(strategy.value, "", None)
    if strategy is Strategy.CONTEXTUAL and ref is not None:
        request = CONTEXTUAL_VISUAL_REQUEST
    builder.fixed(request)
    builder.add(slot_rows, **slots)
    if ref is not None:
        if strategy is not Strategy.CONTEXTUAL:
            builder.fixed(BASELINE_SCREENSHOT)
        builder.add(SCREENSHOT_SLOT, screenshot=ref.describe())
        builder.attach(ref.load())
    return builder.build()


__all__ = [
    "CORRECTION_MARKERS",
    "DETECTION_MARKERS",
    "MarkerProtocol",
    "PromptBundle",
    "PromptSegment",
    "build_baseline_prompt",
    "build_corrective_reprompt",
    "build_initial_correction_prompt",
    "build_semantic_detection_prompt",
]

"""
Answer extraction for the a11y-mender application.

This module pulls corrected code, confidence and explanation out of model
answers, either from marker-delimited blocks or, for free-form answers, by
locating the first HTML fragment in the text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from bs4 import Tag

from .dom import VOID_ELEMENTS, make_soup

CODE_START = "###START###"
CODE_END = "###END###"
CONFIDENCE_START = "###START1###"
CONFIDENCE_END = "###END1###"
EXPLANATION_START = "###START2###"
EXPLANATION_END = "###END2###"

_TAG_OPEN = re.compile(r"<([a-zA-Z][\w:-]*)")
_CODE_FENCE = re.compile(r"\A```[\w+-]*[ \t]*\n(.*?)\n?```\Z", re.DOTALL)
REACT_ANSWER_LABEL = "Correct:"
_NUMBER = re.compile(r"-?\d+(?:\.\d+)?")


@dataclass(frozen=True)
class LlmResponse:
    """A model answer and what could be extracted from it."""

    raw_text: str
    extracted_code: str | None = None
    confidence: int | None = None
    explanation: str | None = None


def extract_marked(text: str, start: str, end: str) -> str | None:
    """
    Return the text between the first start marker and the next end marker.

    Args:
        text: Model answer
        start: Opening marker
        end: Closing marker

    Returns:
        The enclosed text, unmodified, or None when either marker is missing
    """
    begin = text.find(start)
    if begin < 0:
        return None
    begin += len(start)
    finish = text.find(end, begin)
    if finish < 0:
        return None
    return text[begin:finish]


def _element_end(text: str, start: int, name: str) -> int:
    tag_end = text.find(">", start)
    if tag_end < 0:
        return -1
    if name.lower() in VOID_ELEMENTS or text[tag_end - 1] == "/":
        return tag_end + 1
    pattern = re.compile(rf"<(/?){re.escape(name)}(?=[\s/>])[^>]*>", re.IGNORECASE)
    depth = 0
    for match in pattern.finditer(text, start):
        if match.group(1):
            depth -= 1
        elif not match.group(0).endswith("/>"):
            depth += 1
        if depth == 0:
            return match.end()
    # Unclosed: the start tag alone.
    return tag_end + 1


def extract_first_html(text: str) -> str | None:
    """
    Find the first HTML fragment in a free-form answer.

    The text is scanned for tag openings; from each one the element is
    followed to its matching end tag (or taken as a lone start tag when it is
    never closed) and kept if it parses to at least one element.

    Args:
        text: Model answer

    Returns:
        The fragment, or None when the answer contains no markup
    """
    for match in _TAG_OPEN.finditer(text):
        end = _element_end(text, match.start(), match.group(1))
        if end < 0:
            continue
        candidate = text[match.start() : end]
        if any(isinstance(t, Tag) for t in make_soup(candidate).find_all(True)):
            return candidate
    return None


def extract_labeled_html(text: str, label: str) -> str | None:
    """
    Find the first HTML fragment after the last ``label`` in an answer.

    Answers without the label, or with no markup after it, fall back to the
    first fragment of the whole text.
    """
    position = text.rfind(label)
    if position >= 0:
        found = extract_first_html(text[position + len(label) :])
        if found is not None:
            return found
    return extract_first_html(text)


def strip_code_fence(code: str) -> str:
    """Remove a Markdown code fence wrapped around the whole of ``code``."""
    code = code.strip()
    if (match := _CODE_FENCE.match(code)) is not None:
        return match.group(1).strip()
    return code


def parse_confidence(text: str | None) -> int | None:
    """
    Read a confidence value such as ``85``, ``85%`` or ``Confidence: 85%``.

    Returns:
        The value clamped to 0..100, or None when no number is present
    """
    if text is None or (match := _NUMBER.search(text)) is None:
        return None
    # Clamp before rounding; huge digit runs parse to inf.
    return round(min(max(float(match.group(0)), 0.0), 100.0))


def parse_llm_response(text: str) -> LlmResponse:
    """Split a marker-structured correction answer into its parts."""
    code = extract_marked(text, CODE_START, CODE_END)
    explanation = extract_marked(text, EXPLANATION_START, EXPLANATION_END)
    return LlmResponse(
        raw_text=text,
        extracted_code=strip_code_fence(code) if code is not None else None,
        confidence=parse_confidence(
            extract_marked(text, CONFIDENCE_START, CONFIDENCE_END)
        ),
        explanation=explanation.strip() if explanation is not None else None,
    )

"""Tests for answer extraction and screenshot loading."""

import random

import pytest
from PIL import Image

from a11y_mender.errors import ScreenshotError
from a11y_mender.extraction import (
    CODE_END,
    CODE_START,
    REACT_ANSWER_LABEL,
    extract_first_html,
    extract_labeled_html,
    extract_marked,
    parse_confidence,
    parse_llm_response,
)
from a11y_mender.screenshots import ScreenshotRef

FRAGMENTS = [
    '<img alt="Vitamin guide" src="guide.png">',
    '<button type="button">Subscribe</button>',
    "<div><p>Vitamin A</p><p>Vitamin C</p></div>",
    '<a href="guide.pdf"><img alt="Guide" src="g.png"></a>',
    '<html lang="en">',
    '<div tabindex="0"><div>nested</div></div>',
    '<meta content="width=device-width, initial-scale=1" name="viewport">',
]
WORDS = ["the", "element", "now", "has", "text", "fixed", "code:", "Here", "is", "\n"]


def _prose(rng: random.Random) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(rng.randrange(0, 12)))


def test_parse_marked_answer():
    """Test extraction of code, confidence and explanation."""
    answer = (
        "Stage 1: screen readers announce nothing.\n"
        "###START###\n<html lang=\"en\">\n###END###\n"
        "###START1###85%###END1###\n"
        "###START2### Added the page language. ###END2###"
    )
    response = parse_llm_response(answer)
    assert response.extracted_code == '<html lang="en">'
    assert response.confidence == 85
    assert response.explanation == "Added the page language."
    assert response.raw_text == answer


def test_parse_answer_without_markers():
    """Test that missing markers give None fields."""
    response = parse_llm_response("I cannot help with that.")
    assert response.extracted_code is None
    assert response.confidence is None
    assert response.explanation is None


def test_extract_marked_needs_both_markers():
    """Test an unclosed block."""
    assert extract_marked("###START### <p>x</p>", CODE_START, CODE_END) is None
    assert extract_marked("###START######END###", CODE_START, CODE_END) == ""


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("85", 85),
        ("Confidence: 92%", 92),
        ("150", 100),
        ("-3", 0),
        ("87.6", 88),
        ("9" * 400, 100),
        ("-" + "9" * 400, 0),
        ("high", None),
        (None, None),
    ],
)
def test_parse_confidence(text, expected):
    """Test confidence parsing and clamping."""
    assert parse_confidence(text) == expected


def test_extract_first_html_from_prose():
    """Test locating markup in a free-form answer."""
    answer = (
        "No, the code is not accessible. Corrected code:\n"
        '<button type="button"><img alt="Subscribe" src="s.png"></button>\n'
        "Now the button has a name. <p>ignored</p>"
    )
    assert extract_first_html(answer) == (
        '<button type="button"><img alt="Subscribe" src="s.png"></button>'
    )


def test_extract_first_html_without_markup():
    """Test answers that hold no markup."""
    assert extract_first_html("Yes, the code is accessible.") is None
    assert extract_first_html("x < y and y > z") is None


def test_fenced_code_between_markers():
    """Test that a Markdown fence inside the code markers is dropped."""
    answer = (
        "###START###\n```html\n<html lang=\"en\">\n```\n###END###\n"
        "###START1###90###END1###"
    )
    assert parse_llm_response(answer).extracted_code == '<html lang="en">'


def test_fence_only_stripped_when_it_wraps_everything():
    """Test that backticks inside markup are left alone."""
    code = "<code>```</code>"
    answer = f"{CODE_START}{code}{CODE_END}"
    assert parse_llm_response(answer).extracted_code == code


def test_react_answer_takes_code_after_correct_label():
    """Test that the incorrect example before the fix is skipped."""
    answer = (
        'Incorrect: <button type="button"><img src="s.png"></button>\n'
        "Thought: because the button has no name I will add alt text.\n"
        'Correct: <button type="button"><img alt="Subscribe" src="s.png"></button>'
    )
    assert extract_labeled_html(answer, REACT_ANSWER_LABEL) == (
        '<button type="button"><img alt="Subscribe" src="s.png"></button>'
    )


def test_labeled_extraction_falls_back_to_first_fragment():
    """Test answers that do not use the label."""
    answer = 'Here is the fix: <html lang="en"> done.'
    assert extract_labeled_html(answer, REACT_ANSWER_LABEL) == '<html lang="en">'


def test_extraction_over_random_answers():
    """Test both extraction paths over seeded random answers."""
    rng = random.Random(2024)
    for _ in range(1000):
        fragment = rng.choice(FRAGMENTS)
        before, after = _prose(rng), _prose(rng)

        marked = f"{before}\n{CODE_START}\n{fragment}\n{CODE_END}\n{after}"
        assert parse_llm_response(marked).extracted_code == fragment

        free = f"{before} {fragment} {after}"
        assert extract_first_html(free) == fragment


def test_screenshot_loads_png(screenshot):
    """Test loading the bundled screenshot."""
    attachment = screenshot.load()
    assert attachment.media_type == "image/png"
    assert len(attachment.digest) == 64
    assert attachment.data_url().startswith("data:image/png;base64,")
    assert "1440px" in screenshot.describe()


def test_screenshot_missing_file(tmp_path):
    """Test that a missing screenshot raises ScreenshotError."""
    with pytest.raises(ScreenshotError, match="missing.png"):
        ScreenshotRef(tmp_path / "missing.png").load()


def test_screenshot_not_an_image(tmp_path):
    """Test that a non-image file raises ScreenshotError."""
    path = tmp_path / "page.png"
    path.write_text("<html></html>", encoding="utf-8")
    with pytest.raises(ScreenshotError, match="not a decodable image"):
        ScreenshotRef(path).load()


def test_screenshot_unsupported_format(tmp_path):
    """Test that formats other than PNG and JPEG are refused."""
    path = tmp_path / "page.gif"
    Image.new("RGB", (2, 2)).save(path, format="GIF")
    with pytest.raises(ScreenshotError, match="unsupported format GIF"):
        ScreenshotRef(path).load()

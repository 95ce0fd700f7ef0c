"""Tests for color parsing, resolution and contrast."""

import random

import pytest

from a11y_mender.colors import (
    BLACK,
    WHITE,
    ColorValue,
    contrast_ratio,
    relative_luminance,
    resolve_colors,
)
from a11y_mender.dom import parse_document


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("#333", ColorValue(51, 51, 51)),
        ("#888888", ColorValue(136, 136, 136)),
        ("rgb(250, 250, 250)", ColorValue(250, 250, 250)),
        ("white", ColorValue(255, 255, 255)),
        ("#FAFAFA !important", ColorValue(250, 250, 250)),
    ],
)
def test_parse_colors(text, expected):
    """Test the supported color notations."""
    assert ColorValue.parse(text) == expected


def test_parse_alpha_and_garbage():
    """Test translucent colors and unparseable values."""
    assert ColorValue.parse("rgba(0, 0, 0, 0.5)") == ColorValue(0, 0, 0, 0.5)
    assert ColorValue.parse("transparent") == ColorValue(0, 0, 0, 0.0)
    assert ColorValue.parse("not-a-color") is None
    assert ColorValue.parse("") is None


@pytest.mark.parametrize(
    "text",
    [
        "rgb(1e999, 0, 0)",
        "rgb(" + "9" * 400 + ", 0, 0)",
        "rgba(0, 0, 0, nan)",
        "rgba(0, 0, 0, inf)",
        "rgb(nan nan nan)",
        "rgb(1.2.3, 0, 0)",
        "rgb(0, 0)",
    ],
)
def test_parse_rejects_non_finite_channels(text):
    """Test that overflowing or undefined numbers give no color."""
    assert ColorValue.parse(text) is None


def test_parse_clamps_out_of_range_channels():
    """Test that finite values outside the channel range are clamped."""
    assert ColorValue.parse("rgb(300, -5, 0)") == ColorValue(255, 0, 0)
    assert ColorValue.parse("rgba(0, 0, 0, 150%)") == ColorValue(0, 0, 0, 1.0)


def test_black_on_white_is_maximum_contrast():
    """Test the upper bound of the contrast ratio."""
    assert contrast_ratio(BLACK, WHITE) == pytest.approx(21.0)
    assert contrast_ratio(WHITE, WHITE) == pytest.approx(1.0)


def test_portal_heading_contrast():
    """Test the contrast of the grey heading on the dark panel."""
    ratio = contrast_ratio(ColorValue.parse("#888888"), ColorValue.parse("#333333"))
    assert ratio == pytest.approx(3.56, abs=0.01)
    assert ratio < 4.5


def test_contrast_is_symmetric_and_bounded():
    """Test symmetry and range over random color pairs."""
    rng = random.Random(1234)
    for _ in range(1000):
        a = ColorValue(rng.randrange(256), rng.randrange(256), rng.randrange(256))
        b = ColorValue(rng.randrange(256), rng.randrange(256), rng.randrange(256))
        forward = contrast_ratio(a, b)
        assert forward == pytest.approx(contrast_ratio(b, a))
        assert 1.0 <= forward <= 21.0 + 1e-9


def test_relative_luminance_extremes():
    """Test the luminance of black and white."""
    assert relative_luminance(BLACK) == 0.0
    assert relative_luminance(WHITE) == pytest.approx(1.0)


def test_resolve_colors_walks_ancestors(portal_doc):
    """Test that inherited text color and ancestor background are used."""
    h2 = portal_doc.root.find("h2")
    foreground, background = resolve_colors(portal_doc.node(h2))
    assert foreground.hex == "#888888"
    assert background.hex == "#333333"


def test_resolve_colors_composites_translucent_background():
    """Test that a half-transparent black over white resolves to grey."""
    doc = parse_document(
        '<div style="background-color: rgba(0, 0, 0, 0.5)"><p>text</p></div>'
    )
    _, background = resolve_colors(doc.node(doc.root.find("p")))
    assert background.hex == "#808080"


def test_resolve_colors_defaults_to_black_on_white():
    """Test the defaults when nothing is declared."""
    doc = parse_document("<p>plain</p>")
    foreground, background = resolve_colors(doc.node(doc.root.find("p")))
    assert (foreground, background) == (BLACK, WHITE)

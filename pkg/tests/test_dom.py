"""Tests for lenient parsing, serialization and snippet matching."""

import pytest

from a11y_mender.dom import (
    HtmlSnippet,
    find_segment,
    normalize,
    parse_document,
    serialize_node,
)
from a11y_mender.errors import StaleNodeError


def test_parse_repairs_unclosed_elements():
    """Test that malformed markup still yields a document."""
    doc = parse_document("<div><p>one<p>two</div>")
    assert [t.name for t in doc.elements()] == ["div", "p", "p"]


def test_parse_accepts_bytes_with_invalid_utf8():
    """Test that undecodable bytes are replaced rather than rejected."""
    doc = parse_document(b"<p>caf\xff</p>")
    assert "�" in doc.serialize()


def test_serialize_sorts_attributes_and_skips_void_end_tags():
    """Test the canonical serialization."""
    doc = parse_document('<img src="a.png" alt="x"><br>')
    assert doc.serialize() == '<img alt="x" src="a.png"><br>'


def test_serialize_round_trips(portal_doc):
    """Test that parsing a serialization gives the same serialization."""
    first = portal_doc.serialize()
    assert parse_document(first).serialize() == first


def test_serialize_keeps_script_text_verbatim():
    """Test that script contents are not escaped."""
    doc = parse_document("<script>if (a < b) { go(); }</script>")
    assert doc.serialize() == "<script>if (a < b) { go(); }</script>"


@pytest.mark.parametrize(
    "text",
    [
        '<a  href="x" >Go  there</a>',
        "<div>\n  <p>Vitamin A </p>\n</div>",
        '<IMG ALT="x" SRC="y">',
        "plain text",
    ],
)
def test_normalize_is_idempotent(text):
    """Test normalize(normalize(x)) == normalize(x)."""
    once = normalize(text)
    assert normalize(once) == once


def test_normalize_ignores_whitespace_and_attribute_order():
    """Test that formatting differences do not matter."""
    a = '<label role="checkbox" class="c">\n  <input type="checkbox"> Kids\n</label>'
    b = '<label class="c" role="checkbox"><input type="checkbox">Kids</label>'
    assert normalize(a) == normalize(b)


def test_find_segment_locates_deepest_match(portal_doc):
    """Test that the innermost element containing the snippet is returned."""
    img = '<img src="https://img.Webmd.com/woman.jpg" alt="image">'
    node = find_segment(portal_doc, img)
    assert node is not None
    assert node.tag_name == "img"
    assert node.resolve().get("alt") == "image"


def test_find_segment_matches_lone_start_tag(portal_doc):
    """Test that a start tag alone matches an element with children."""
    node = find_segment(portal_doc, HtmlSnippet("<html>"))
    assert node is not None
    assert node.tag_name == "html"


def test_find_segment_returns_none_for_fabricated_snippet(portal_doc):
    """Test that markup that is not in the page is not found."""
    assert find_segment(portal_doc, '<img src="cat.png" alt="a cat">') is None


def test_node_paths_round_trip(portal_doc):
    """Test that a node path resolves back to the same element."""
    button = portal_doc.root.find("button")
    ref = portal_doc.node(button)
    again = portal_doc.node_from_path_id(ref.path_id)
    assert again.resolve() is button


def test_stale_node_reference_raises(portal_doc):
    """Test that a path into nothing raises StaleNodeError."""
    with pytest.raises(StaleNodeError):
        portal_doc.node_from_path_id("0.99.1")


def test_stale_node_reference_checks_tag_name(portal_doc):
    """Test that a path leading to another element type is stale."""
    ref = portal_doc.node(portal_doc.root.find("button"))
    with pytest.raises(StaleNodeError, match="expected <td>"):
        portal_doc.resolve(ref.path, "td")


def test_serialize_node_escapes_text():
    """Test that text content is escaped."""
    doc = parse_document("<p>a &amp; b &lt; c</p>")
    assert serialize_node(doc.root) == "<p>a &amp; b &lt; c</p>"

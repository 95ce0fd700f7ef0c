"""Tests for the static detector and violation scoring."""

from collections import Counter

import pytest

from a11y_mender.dom import parse_document
from a11y_mender.enums import Category, SupplementaryKind
from a11y_mender.errors import UnknownRuleError
from a11y_mender.rules import get_rule, rule_ids, run_rule
from a11y_mender.static_detector import (
    detect_static,
    scaffold_document,
    violation_score,
)
from a11y_mender.taxonomy import TaxonomyRegistry
from a11y_mender.violations import PageContext

CTX = PageContext(url="https://www.vitaminhealthguide.com/", domain="Health")


def test_detects_every_violation_of_the_portal(portal_doc, registry):
    """Test the full set of static findings on the broken page."""
    violations = detect_static(portal_doc, CTX, registry)
    counts = Counter(v.type_name for v in violations)

    assert counts == {
        "html-has-lang": 1,
        "meta-viewport": 1,
        "color-contrast": 18,
        "scrollable-region-focusable": 1,
        "empty-table-header": 1,
        "link-name": 1,
        "nested-interactive": 3,
        "button-name": 1,
    }


def test_fixed_portal_is_compliant(fixed_portal_html, registry):
    """Test that the corrected page has no static findings."""
    assert detect_static(parse_document(fixed_portal_html), CTX, registry) == []
    assert violation_score(fixed_portal_html, registry) == 0


def test_findings_are_enriched_from_the_taxonomy(portal_doc, registry):
    """Test that each finding carries its taxonomy data and the context."""
    violations = detect_static(portal_doc, CTX, registry)
    button = next(v for v in violations if v.type_name == "button-name")

    assert button.category is Category.SYNTACTIC
    assert button.score == 5
    assert button.context == CTX
    assert button.fix_advice
    assert button.id == f"button-name:{button.affected[0].node_path}"
    assert button.snippet.text.startswith('<button class="subscribe-button"')


def test_findings_are_ordered_by_position(portal_doc, registry):
    """Test document order with the html element first."""
    violations = detect_static(portal_doc, CTX, registry)
    assert violations[0].type_name == "html-has-lang"
    assert violations[0].snippet.text == "<html>"
    assert violations[1].type_name == "meta-viewport"
    assert violations[-1].type_name == "button-name"


def test_contrast_findings_carry_resolved_colors(portal_doc, registry):
    """Test the colors supplement of a contrast finding."""
    violations = detect_static(portal_doc, CTX, registry)
    heading = next(
        v
        for v in violations
        if v.type_name == "color-contrast" and v.snippet.text.startswith("<h2>")
    )
    assert heading.approximate
    assert heading.supplementary.kind is SupplementaryKind.COLORS
    assert heading.supplementary.foreground == "#888888"
    assert heading.supplementary.background == "#333333"
    assert heading.supplementary.contrast_ratio == pytest.approx(3.56, abs=0.01)


def test_best_practice_rules_are_opt_in(portal_doc, registry):
    """Test that page-level best practices only run when requested."""
    default = {v.type_name for v in detect_static(portal_doc, CTX, registry)}
    extended = {
        v.type_name
        for v in detect_static(portal_doc, CTX, registry, include_best_practices=True)
    }
    assert "landmark-one-main" not in default
    assert extended - default == {"landmark-one-main"}


def test_explicit_rule_selection(portal_doc, registry):
    """Test running a chosen subset of rules."""
    violations = detect_static(portal_doc, CTX, registry, rule_ids=["button-name"])
    assert [v.type_name for v in violations] == ["button-name"]


def test_rules_missing_from_taxonomy_are_skipped(portal_doc, registry):
    """Test that a reduced taxonomy switches rules off."""
    reduced = TaxonomyRegistry([registry.lookup("link-name")])
    violations = detect_static(portal_doc, CTX, reduced)
    assert [v.type_name for v in violations] == ["link-name"]


def test_page_score_is_sum_of_finding_scores(portal_doc, registry):
    """Test the page violation score."""
    violations = detect_static(portal_doc, CTX, registry)
    assert violation_score(portal_doc, registry) == sum(v.score for v in violations)
    assert violation_score(portal_doc, registry) > 0


@pytest.mark.parametrize(
    ("fragment", "score"),
    [
        ('<button type="button"><img src="x.png"></button>', 5),
        ('<button type="button"><img src="x.png" alt="Subscribe"></button>', 0),
        ('<a href="guide.pdf"><img src="g.png"></a>', 4),
        ('<a href="guide.pdf"><img src="g.png" alt="Vitamin guide"></a>', 0),
        ('<meta name="viewport" content="user-scalable=no">', 5),
        ("<p>Vitamin C</p>", 0),
    ],
)
def test_fragment_scores(registry, fragment, score):
    """Test scoring isolated fragments."""
    assert violation_score(fragment, registry) == score


def test_fragment_scores_use_context_colors(registry):
    """Test that a fragment inherits the colors of its original context."""
    fragment = "<p>Vitamin C</p>"
    assert violation_score(fragment, registry, colors=("#888888", "#333333")) == 4
    assert violation_score(fragment, registry, colors=("#ffffff", "#333333")) == 0


def test_fragments_skip_page_level_rules(registry):
    """Test that best-practice page rules do not judge fragments."""
    assert violation_score("<p>hi</p>", registry, include_best_practices=True) == 0


def test_scaffold_places_head_content(registry):
    """Test that head-only fragments land in the head."""
    doc = scaffold_document('<meta name="viewport" content="width=device-width">')
    assert doc.root.find("head").find("meta") is not None
    assert doc.root.find("html").get("lang") == "en"


def test_scaffold_keeps_full_documents():
    """Test that whole pages are not wrapped again."""
    doc = scaffold_document("<!DOCTYPE html><html><body><p>x</p></body></html>")
    assert doc.root.find("html").get("lang") is None


def test_rule_registry_lookup():
    """Test rule metadata and unknown ids."""
    assert get_rule("color-contrast").approximate
    assert get_rule("heading-order").best_practice
    assert "heading-order" not in rule_ids()
    assert "heading-order" in rule_ids(include_best_practices=True)
    with pytest.raises(UnknownRuleError):
        run_rule("no-such-rule", parse_document("<p>x</p>"))


@pytest.mark.parametrize(
    "style",
    [
        "font-size: 1.2.3px",
        "font-size: 1..5pt; font-weight: bold",
        "font-weight: ²",
        "color: rgb(1e999, 0, 0)",
        "color: rgba(0, 0, 0, nan)",
        "background-color: rgb(nan nan nan)",
        "background: url(x.png) rgba(0, 0, 0, inf)",
    ],
)
def test_malformed_inline_css_is_ignored(registry, style):
    """Test that unreadable style values fall back to the defaults."""
    fragment = f'<p style="{style}">Vitamin C</p>'
    assert violation_score(fragment, registry) == 0


@pytest.mark.parametrize(
    ("fragment", "score"),
    [
        ('<div id="a"><a href="/" aria-labelledby="a"></a></div>', 4),
        ('<div id="a">Vitamin guide <a href="/" aria-labelledby="a"></a></div>', 0),
        (
            '<span id="x"><button type="button" aria-labelledby="y"></button></span>'
            '<span id="y"><a href="/" aria-labelledby="x"></a></span>',
            9,
        ),
        ('<a id="self" href="/" aria-labelledby="self"></a>', 4),
    ],
)
def test_cyclic_labelledby_references(registry, fragment, score):
    """Test that reference cycles are followed one hop and then named normally."""
    assert violation_score(fragment, registry) == score


def test_malformed_page_is_still_checked(registry):
    """Test a whole page mixing broken styles with a reference cycle."""
    doc = parse_document(
        '<!DOCTYPE html><html lang="en"><head><title>Vitamins</title>'
        '<meta name="viewport" content="width=device-width"></head><body>'
        '<p style="font-size: 1.2.3px; color: rgb(1e999, 0, 0)">Vitamin C</p>'
        '<div id="a"><a href="/" aria-labelledby="a"></a></div>'
        "</body></html>"
    )
    violations = detect_static(doc, CTX, registry)
    assert [v.type_name for v in violations] == ["link-name"]

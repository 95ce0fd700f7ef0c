"""
Rule catalog for the a11y-mender application.

This module provides the static accessibility checks. Each rule is a
generator registered under the taxonomy name it reports; it inspects a parsed
document and yields raw findings without any taxonomy enrichment.
"""

from __future__ import annotations

import re
from collections import defaultdict
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from bs4 import NavigableString, Tag

from .colors import contrast_ratio, parse_inline_style, resolve_tag_colors
from .dom import Document, NodeRef
from .enums import SupplementaryKind
from .errors import UnknownRuleError
from .violations import Supplementary

_LANG_SHAPE = re.compile(r"[a-z]{2,3}(-[a-z]{4})?(-([a-z]{2}|\d{3}))?", re.IGNORECASE)
_WHITESPACE = re.compile(r"\s+")
_FONT_SIZE = re.compile(r"(?<![\d.])(\d+(?:\.\d+)?|\.\d+)\s*(px|pt)\b")
_HEADING = re.compile(r"h([1-6])")
_IMPORTANT = re.compile(r"!\s*important", re.IGNORECASE)

_NOT_RENDERED = frozenset(
    {"head", "script", "style", "noscript", "template", "title", "meta", "link"}
)
_PRESENTATIONAL_CHILDREN_ROLES = frozenset(
    {
        "button",
        "checkbox",
        "menuitemcheckbox",
        "menuitemradio",
        "meter",
        "option",
        "progressbar",
        "radio",
        "scrollbar",
        "slider",
        "switch",
        "tab",
    }
)
_REQUIRED_ARIA: dict[str, tuple[str, ...]] = {
    "checkbox": ("aria-checked",),
    "combobox": ("aria-expanded",),
    "heading": ("aria-level",),
    "menuitemcheckbox": ("aria-checked",),
    "menuitemradio": ("aria-checked",),
    "radio": ("aria-checked",),
    "scrollbar": ("aria-controls", "aria-valuenow"),
    "slider": ("aria-valuenow",),
    "switch": ("aria-checked",),
}
_SPACING_PROPERTIES = ("line-height", "letter-spacing", "word-spacing")
_ID_REFERENCE_ATTRIBUTES = ("aria-labelledby", "aria-describedby")
_BUTTON_INPUT_TYPES = frozenset({"button", "submit", "reset"})
_NATIVE_CHECKABLE = frozenset({"checkbox", "radio"})


@dataclass(frozen=True)
class RuleFinding:
    """A raw hit of one rule."""

    nodes: tuple[NodeRef, ...]
    detail: str
    supplementary: Supplementary | None = None


RuleCheck = Callable[[Document], Iterator[RuleFinding]]


@dataclass(frozen=True)
class Rule:
    """A registered check and its metadata."""

    rule_id: str
    check: RuleCheck
    advice: str
    """How to fix a hit; used by the fix-advice prompt baseline."""

    best_practice: bool = False
    """Only runs when best-practice rules are requested."""

    approximate: bool = False
    """Depends on rendering that is only approximated here."""

    page_level: bool = False
    """Judges the whole page; meaningless on an isolated fragment."""


RULES: dict[str, Rule] = {}


def rule(
    rule_id: str,
    *,
    advice: str,
    best_practice: bool = False,
    approximate: bool = False,
    page_level: bool = False,
) -> Callable[[RuleCheck], RuleCheck]:
    """Register a check function under a taxonomy name."""

    def register(check: RuleCheck) -> RuleCheck:
        RULES[rule_id] = Rule(
            rule_id=rule_id,
            check=check,
            advice=advice,
            best_practice=best_practice,
            approximate=approximate,
            page_level=page_level,
        )
        return check

    return register


def get_rule(rule_id: str) -> Rule:
    """
    Get a registered rule.

    Raises:
        UnknownRuleError: If no rule has that id
    """
    try:
        return RULES[rule_id]
    except KeyError:
        raise UnknownRuleError(rule_id) from None


def rule_ids(
    *, include_best_practices: bool = False, include_page_level: bool = True
) -> list[str]:
    """Ids of the rules that run under the given switches, sorted."""
    return sorted(
        r.rule_id
        for r in RULES.values()
        if (include_best_practices or not r.best_practice)
        and (include_page_level or not r.page_level)
    )


def run_rule(rule_id: str, doc: Document) -> list[RuleFinding]:
    """
    Run a single rule over a document.

    Args:
        rule_id: Name of the rule
        doc: The parsed document

    Returns:
        Raw findings in document order

    Raises:
        UnknownRuleError: If no rule has that id
    """
    return list(get_rule(rule_id).check(doc))


# ----------------------------------------------------------------------
# Element helpers
# ----------------------------------------------------------------------
def _attr(tag: Tag, name: str) -> str | None:
    value = tag.get(name)
    return None if value is None else str(value)


def _role(tag: Tag) -> str:
    roles = (_attr(tag, "role") or "").strip().lower().split()
    return roles[0] if roles else ""


def _collapse(text: str) -> str:
    return _WHITESPACE.sub(" ", text).strip()


def _style(tag: Tag) -> dict[str, str]:
    return parse_inline_style(_attr(tag, "style") or "")


def _root_of(tag: Tag) -> Tag:
    node = tag
    while node.parent is not None:
        node = node.parent
    return node


def _by_id(tag: Tag, element_id: str) -> Tag | None:
    found = _root_of(tag).find(id=element_id)
    return found if isinstance(found, Tag) else None


def _is_aria_hidden(tag: Tag) -> bool:
    return (_attr(tag, "aria-hidden") or "").strip().lower() == "true"


def _is_hidden(tag: Tag) -> bool:
    for element in (tag, *tag.parents):
        if element.has_attr("hidden"):
            return True
        style = _style(element)
        if style.get("display", "").startswith("none"):
            return True
        if style.get("visibility", "").startswith("hidden"):
            return True
    return False


def _own_text(tag: Tag) -> str:
    return _collapse(
        "".join(str(c) for c in tag.children if type(c) is NavigableString)
    )


def content_text(tag: Tag, *, follow_labelledby: bool = True) -> str:
    """
    Text a screen reader derives from an element's content, img alt included.

    With ``follow_labelledby`` off, descendants are named without following
    their ``aria-labelledby`` references.
    """
    parts: list[str] = []
    for child in tag.children:
        if isinstance(child, Tag):
            if child.name in _NOT_RENDERED or _is_aria_hidden(child):
                continue
            parts.append(accessible_name(child, follow_labelledby=follow_labelledby))
        elif type(child) is NavigableString:
            parts.append(str(child))
    return _collapse(" ".join(parts))


def accessible_name(tag: Tag, *, follow_labelledby: bool = True) -> str:
    """
    Compute the discernible text of an element.

    Follows ``aria-labelledby``, then ``aria-label``, then the native name
    (``alt`` of images, ``value`` of button inputs), then content and finally
    ``title``.

    Referenced elements are read without following their own references, so
    reference cycles end after one hop.
    """
    labelledby = (_attr(tag, "aria-labelledby") or "").split()
    if labelledby and follow_labelledby:
        referenced = [_by_id(tag, ref) for ref in labelledby]
        text = _collapse(
            " ".join(
                content_text(r, follow_labelledby=False) for r in referenced if r
            )
        )
        if text:
            return text
    label = _collapse(_attr(tag, "aria-label") or "")
    if label:
        return label
    is_image_input = tag.name == "input" and _input_type(tag) == "image"
    if tag.name in ("img", "area") or is_image_input:
        alt = _collapse(_attr(tag, "alt") or "")
        if alt:
            return alt
    elif tag.name == "input":
        if _input_type(tag) in _BUTTON_INPUT_TYPES:
            value = _collapse(_attr(tag, "value") or "")
            if value:
                return value
    else:
        text = content_text(tag, follow_labelledby=follow_labelledby)
        if text:
            return text
    return _collapse(_attr(tag, "title") or "")


def _input_type(tag: Tag) -> str:
    return (_attr(tag, "type") or "text").strip().lower()


def is_focusable(tag: Tag) -> bool:
    """Whether an element can receive keyboard focus."""
    if tag.name in ("button", "input", "select", "textarea") and tag.has_attr(
        "disabled"
    ):
        return False
    if tag.name == "a" and tag.has_attr("href"):
        return True
    if tag.name in ("button", "select", "textarea"):
        return True
    if tag.name == "input":
        return _input_type(tag) != "hidden"
    if tag.has_attr("tabindex"):
        return True
    editable = _attr(tag, "contenteditable")
    return editable is not None and editable.strip().lower() != "false"


def _finding(
    doc: Document,
    tags: list[Tag],
    detail: str,
    supplementary: Supplementary | None = None,
) -> RuleFinding:
    return RuleFinding(tuple(doc.node(t) for t in tags), detail, supplementary)


def _lang_is_valid(value: str) -> bool:
    return _LANG_SHAPE.fullmatch(value.strip()) is not None


def _primary_subtag(value: str) -> str:
    return value.strip().lower().split("-")[0]


def _heading_level(tag: Tag) -> int | None:
    if match := _HEADING.fullmatch(tag.name):
        return int(match.group(1))
    if _role(tag) == "heading":
        try:
            return int(_attr(tag, "aria-level") or "2")
        except ValueError:
            return 2
    return None


def _body(doc: Document) -> Tag | None:
    body = doc.root.find("body")
    return body if isinstance(body, Tag) else None


def _html_element(doc: Document) -> Tag | None:
    html = doc.root.find("html")
    return html if isinstance(html, Tag) else None


# ----------------------------------------------------------------------
# Language
# ----------------------------------------------------------------------
@rule(
    "html-has-lang",
    advice="Add a lang attribute to the <html> element, for example lang=\"en\".",
)
def _html_has_lang(doc: Document) -> Iterator[RuleFinding]:
    html = _html_element(doc)
    if html is not None and not (_attr(html, "lang") or "").strip():
        yield _finding(doc, [html], "The <html> element has no lang attribute")


@rule(
    "html-lang-valid",
    advice="Use a valid BCP 47 language tag on <html>, such as en or en-GB.",
)
def _html_lang_valid(doc: Document) -> Iterator[RuleFinding]:
    html = _html_element(doc)
    if html is None:
        return
    lang = (_attr(html, "lang") or "").strip()
    if lang and not _lang_is_valid(lang):
        yield _finding(doc, [html], f"Invalid lang value '{lang}'")


@rule(
    "valid-lang",
    advice="Use a valid BCP 47 language tag in the lang attribute.",
)
def _valid_lang(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if tag.name == "html" or not tag.has_attr("lang"):
            continue
        lang = (_attr(tag, "lang") or "").strip()
        if lang and not _lang_is_valid(lang):
            yield _finding(doc, [tag], f"Invalid lang value '{lang}'")


@rule(
    "html-xml-lang-mismatch",
    advice="Make lang and xml:lang on the <html> element name the same language.",
)
def _html_xml_lang_mismatch(doc: Document) -> Iterator[RuleFinding]:
    html = _html_element(doc)
    if html is None:
        return
    lang = (_attr(html, "lang") or "").strip()
    xml_lang = (_attr(html, "xml:lang") or "").strip()
    if not (_lang_is_valid(lang) and _lang_is_valid(xml_lang)):
        return
    if _primary_subtag(lang) != _primary_subtag(xml_lang):
        yield _finding(
            doc, [html], f"lang '{lang}' and xml:lang '{xml_lang}' disagree"
        )


# ----------------------------------------------------------------------
# Text alternatives and names
# ----------------------------------------------------------------------
def _inside_named_control(tag: Tag) -> bool:
    for parent in tag.parents:
        if parent.name == "button" or (parent.name == "a" and parent.has_attr("href")):
            return True
        if _role(parent) in ("button", "link"):
            return True
    return False


@rule(
    "image-alt",
    advice="Give the image an alt attribute describing its content or purpose.",
)
def _image_alt(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if tag.name != "img":
            continue
        if _role(tag) in ("presentation", "none") or _is_aria_hidden(tag):
            continue
        if _collapse(_attr(tag, "alt") or ""):
            continue
        if any(_collapse(_attr(tag, a) or "") for a in ("aria-label", "title")):
            continue
        if tag.has_attr("aria-labelledby") or _inside_named_control(tag):
            # A control reports its own missing name.
            continue
        yield _finding(doc, [tag], "Image has no alternative text")


@rule(
    "role-img-alt",
    advice="Give the element an aria-label or aria-labelledby describing the image.",
)
def _role_img_alt(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if tag.name == "img" or _role(tag) != "img" or _is_aria_hidden(tag):
            continue
        labelledby = (_attr(tag, "aria-labelledby") or "").split()
        named = any(
            (ref := _by_id(tag, i)) is not None and content_text(ref)
            for i in labelledby
        )
        if not named and not _collapse(
            _attr(tag, "aria-label") or _attr(tag, "title") or ""
        ):
            yield _finding(doc, [tag], "Element with role=img has no accessible name")


def _is_button(tag: Tag) -> bool:
    if tag.name == "button" or _role(tag) == "button":
        return True
    return tag.name == "input" and _input_type(tag) in _BUTTON_INPUT_TYPES


@rule(
    "button-name",
    advice=(
        "Give the button discernible text: visible text, an aria-label, or an "
        "alt on the image it contains."
    ),
)
def _button_name(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if not _is_button(tag) or _is_aria_hidden(tag):
            continue
        if tag.name == "input" and _input_type(tag) in ("submit", "reset"):
            # Browsers supply a default label.
            continue
        if not accessible_name(tag):
            yield _finding(doc, [tag], "Button has no discernible text")


@rule(
    "link-name",
    advice=(
        "Give the link discernible text: link text, an aria-label, or alt text "
        "on the image inside it."
    ),
)
def _link_name(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        is_link = (tag.name == "a" and tag.has_attr("href")) or _role(tag) == "link"
        if not is_link or _is_aria_hidden(tag):
            continue
        if not accessible_name(tag):
            yield _finding(doc, [tag], "Link has no discernible text")


@rule(
    "aria-tooltip-name",
    advice="Give the tooltip text content or an aria-label.",
)
def _aria_tooltip_name(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if _role(tag) == "tooltip" and not accessible_name(tag):
            yield _finding(doc, [tag], "Tooltip has no accessible name")


# ----------------------------------------------------------------------
# Ids and focus
# ----------------------------------------------------------------------
def _referenced_ids(doc: Document) -> set[str]:
    referenced: set[str] = set()
    for tag in doc.elements():
        for name in _ID_REFERENCE_ATTRIBUTES:
            referenced.update((_attr(tag, name) or "").split())
        if tag.name == "label" and (target := _attr(tag, "for")):
            referenced.add(target.strip())
    return referenced


def _duplicate_ids(doc: Document) -> dict[str, list[Tag]]:
    by_id: dict[str, list[Tag]] = defaultdict(list)
    for tag in doc.elements():
        if (value := (_attr(tag, "id") or "").strip()) != "":
            by_id[value].append(tag)
    return {value: tags for value, tags in by_id.items() if len(tags) > 1}


@rule(
    "duplicate-id",
    advice="Make every id value unique in the page.",
)
def _duplicate_id(doc: Document) -> Iterator[RuleFinding]:
    referenced = _referenced_ids(doc)
    for value, tags in _duplicate_ids(doc).items():
        if value not in referenced:
            yield _finding(doc, tags, f"id '{value}' is used {len(tags)} times")


@rule(
    "duplicate-id-aria",
    advice="Make ids referenced by labels and ARIA attributes unique.",
)
def _duplicate_id_aria(doc: Document) -> Iterator[RuleFinding]:
    referenced = _referenced_ids(doc)
    for value, tags in _duplicate_ids(doc).items():
        if value in referenced:
            yield _finding(
                doc, tags, f"Referenced id '{value}' is used {len(tags)} times"
            )


@rule(
    "tabindex",
    advice="Use tabindex=\"0\" or remove the attribute instead of a positive value.",
)
def _tabindex(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        try:
            value = int((_attr(tag, "tabindex") or "").strip())
        except ValueError:
            continue
        if value > 0:
            yield _finding(doc, [tag], f"tabindex is {value}")


# ----------------------------------------------------------------------
# Meta elements
# ----------------------------------------------------------------------
def _meta_properties(content: str) -> dict[str, str]:
    properties: dict[str, str] = {}
    for item in re.split(r"[,;]", content):
        key, sep, value = item.partition("=")
        if sep:
            properties[key.strip().lower()] = value.strip().lower()
    return properties


@rule(
    "meta-viewport",
    advice=(
        "Remove user-scalable=no and any maximum-scale below 2 from the viewport "
        "meta element, e.g. content=\"width=device-width, initial-scale=1\"."
    ),
)
def _meta_viewport(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if tag.name != "meta" or (_attr(tag, "name") or "").lower() != "viewport":
            continue
        properties = _meta_properties(_attr(tag, "content") or "")
        problems: list[str] = []
        if properties.get("user-scalable") in ("no", "0"):
            problems.append("user-scalable disables zooming")
        try:
            if float(properties.get("maximum-scale", "10")) < 2:
                problems.append("maximum-scale is below 2")
        except ValueError:
            pass
        if problems:
            yield _finding(doc, [tag], "; ".join(problems))


@rule(
    "meta-refresh",
    advice="Remove the timed refresh or redirect, or let the user control it.",
)
def _meta_refresh(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if tag.name != "meta":
            continue
        if (_attr(tag, "http-equiv") or "").strip().lower() != "refresh":
            continue
        delay = (_attr(tag, "content") or "").split(";")[0].split(",")[0].strip()
        try:
            seconds = float(delay)
        except ValueError:
            continue
        if seconds > 0:
            yield _finding(doc, [tag], f"Page refreshes after {delay} seconds")


# ----------------------------------------------------------------------
# Structure
# ----------------------------------------------------------------------
@rule(
    "empty-heading",
    advice="Put text in the heading or remove the heading element.",
)
def _empty_heading(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if _heading_level(tag) is None or _is_aria_hidden(tag):
            continue
        if not accessible_name(tag):
            yield _finding(doc, [tag], "Heading has no discernible text")


def _rows(table: Tag) -> list[Tag]:
    return [
        row
        for row in table.find_all("tr")
        if isinstance(row, Tag) and row.find_parent("table") is table
    ]


def _cells(row: Tag) -> list[Tag]:
    return [c for c in row.children if isinstance(c, Tag) and c.name in ("td", "th")]


@rule(
    "empty-table-header",
    advice=(
        "Mark the header row with <th scope=\"col\"> cells that contain text, "
        "optionally grouped in <thead>."
    ),
)
def _empty_table_header(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if tag.name == "th" and not accessible_name(tag):
            yield _finding(doc, [tag], "Table header cell has no text")
        elif tag.name == "table" and _role(tag) not in ("presentation", "none"):
            rows = _rows(tag)
            if len(rows) < 2 or len(_cells(rows[0])) < 2:
                continue
            if not any(c.name == "th" for row in rows for c in _cells(row)):
                yield _finding(doc, [tag], "Data table has no header cells")


@rule(
    "nested-interactive",
    advice=(
        "Do not put focusable controls inside an element whose role hides its "
        "children; remove the outer role or move the control out."
    ),
)
def _nested_interactive(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        role = _role(tag)
        outer = role in _PRESENTATIONAL_CHILDREN_ROLES or (
            tag.name == "button" and not role
        )
        if not outer:
            continue
        nested = [
            d for d in tag.find_all(True) if isinstance(d, Tag) and is_focusable(d)
        ]
        if nested:
            inner = nested[0].name
            detail = f"Contains focusable <{inner}> inside role {role or 'button'}"
            yield _finding(doc, [tag], detail)


@rule(
    "aria-required-attr",
    advice="Add the ARIA state attributes the role requires, e.g. aria-checked.",
)
def _aria_required_attr(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        role = _role(tag)
        required = _REQUIRED_ARIA.get(role)
        if required is None:
            continue
        if tag.name == "input" and _input_type(tag) in _NATIVE_CHECKABLE:
            continue
        if role == "heading" and _HEADING.fullmatch(tag.name):
            continue
        missing = [name for name in required if not tag.has_attr(name)]
        if missing:
            yield _finding(
                doc, [tag], f"role {role} requires {', '.join(missing)}"
            )


@rule(
    "scrollable-region-focusable",
    advice="Add tabindex=\"0\" to the scrollable region so keyboards can scroll it.",
    approximate=True,
)
def _scrollable_region_focusable(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        style = _style(tag)
        overflow = " ".join(
            style.get(p, "") for p in ("overflow", "overflow-x", "overflow-y")
        )
        scrollable = "auto" in overflow or "scroll" in overflow
        if not scrollable and "scroll" not in (_attr(tag, "class") or "").lower():
            continue
        if tag.has_attr("tabindex") or not (_own_text(tag) or tag.find(True)):
            continue
        if any(isinstance(d, Tag) and is_focusable(d) for d in tag.find_all(True)):
            continue
        yield _finding(doc, [tag], "Scrollable region is not reachable by keyboard")


# ----------------------------------------------------------------------
# Layout
# ----------------------------------------------------------------------
@rule(
    "avoid-inline-spacing",
    advice="Drop !important from inline line-height, letter-spacing and word-spacing.",
)
def _avoid_inline_spacing(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        style = _style(tag)
        locked = [p for p in _SPACING_PROPERTIES if _IMPORTANT.search(style.get(p, ""))]
        if locked:
            yield _finding(doc, [tag], f"{', '.join(locked)} set with !important")


def _inherited(tag: Tag, prop: str) -> str | None:
    for element in (tag, *tag.parents):
        if isinstance(element, Tag) and (value := _style(element).get(prop)):
            return value
    return None


def _font_px(tag: Tag) -> float | None:
    value = _inherited(tag, "font-size")
    if value is None or (match := _FONT_SIZE.search(value.lower())) is None:
        return None
    size = float(match.group(1))
    return size * 4 / 3 if match.group(2) == "pt" else size


def _is_bold(tag: Tag) -> bool:
    weight = (_inherited(tag, "font-weight") or "").strip().lower()
    if weight in ("bold", "bolder"):
        return True
    return weight.isdecimal() and int(weight) >= 700


def _is_large_text(tag: Tag) -> bool:
    size = _font_px(tag)
    if size is None:
        return False
    return size >= 24 or (size >= 18.66 and _is_bold(tag))


def _rendered(tag: Tag) -> bool:
    lineage = (tag, *tag.parents)
    if any(element.name in _NOT_RENDERED for element in lineage):
        return False
    return not _is_hidden(tag)


@rule(
    "color-contrast",
    advice=(
        "Change the text or background color so the contrast ratio reaches 4.5:1 "
        "(3:1 for large text)."
    ),
    approximate=True,
)
def _color_contrast(doc: Document) -> Iterator[RuleFinding]:
    for tag in doc.elements():
        if not _own_text(tag) or not _rendered(tag) or tag.has_attr("disabled"):
            continue
        foreground, background = resolve_tag_colors(tag)
        ratio = contrast_ratio(foreground, background)
        threshold = 3.0 if _is_large_text(tag) else 4.5
        if ratio < threshold:
            yield _finding(
                doc,
                [tag],
                f"Contrast ratio {ratio:.2f} is below {threshold}:1",
                Supplementary(
                    kind=SupplementaryKind.COLORS,
                    foreground=foreground.hex,
                    background=background.hex,
                    contrast_ratio=round(ratio, 2),
                ),
            )


# ----------------------------------------------------------------------
# Best-practice page rules
# ----------------------------------------------------------------------
def _mains(doc: Document) -> list[Tag]:
    return [t for t in doc.elements() if t.name == "main" or _role(t) == "main"]


@rule(
    "page-has-heading-one",
    advice="Add an <h1> naming the main topic of the page.",
    best_practice=True,
    page_level=True,
)
def _page_has_heading_one(doc: Document) -> Iterator[RuleFinding]:
    html = _html_element(doc)
    if html is None or _body(doc) is None:
        return
    if not any(_heading_level(t) == 1 for t in doc.elements()):
        yield _finding(doc, [html], "Page has no level-one heading")


@rule(
    "landmark-one-main",
    advice="Wrap the primary content of the page in a <main> element.",
    best_practice=True,
    page_level=True,
)
def _landmark_one_main(doc: Document) -> Iterator[RuleFinding]:
    html = _html_element(doc)
    if html is None or _body(doc) is None:
        return
    if not _mains(doc):
        yield _finding(doc, [html], "Page has no main landmark")


@rule(
    "landmark-no-duplicate-main",
    advice="Keep a single <main> landmark per page.",
    best_practice=True,
    page_level=True,
)
def _landmark_no_duplicate_main(doc: Document) -> Iterator[RuleFinding]:
    mains = _mains(doc)
    if len(mains) > 1:
        yield _finding(doc, mains, f"Page has {len(mains)} main landmarks")


@rule(
    "heading-order",
    advice="Do not skip heading levels; nest headings one level at a time.",
    best_practice=True,
    page_level=True,
)
def _heading_order(doc: Document) -> Iterator[RuleFinding]:
    previous: int | None = None
    for tag in doc.elements():
        level = _heading_level(tag)
        if level is None:
            continue
        if previous is not None and level > previous + 1:
            detail = f"Heading level jumps from {previous} to {level}"
            yield _finding(doc, [tag], detail)
        previous = level

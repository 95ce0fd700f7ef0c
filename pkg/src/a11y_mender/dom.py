"""
DOM module for the a11y-mender application.

This module provides lenient HTML parsing on top of BeautifulSoup's
``html.parser`` tree builder, a canonical serializer, stable node addressing
by element-child index paths and whitespace-insensitive snippet matching.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import lru_cache

from bs4 import (
    BeautifulSoup,
    CData,
    Comment,
    Declaration,
    Doctype,
    NavigableString,
    ParserRejectedMarkup,
    ProcessingInstruction,
    Tag,
)
from bs4.element import PageElement

from .errors import StaleNodeError

VOID_ELEMENTS = frozenset(
    {
        "area",
        "base",
        "br",
        "col",
        "embed",
        "hr",
        "img",
        "input",
        "link",
        "meta",
        "param",
        "source",
        "track",
        "wbr",
    }
)
RAW_TEXT_ELEMENTS = frozenset({"script", "style"})

_WHITESPACE_RUN = re.compile(r"\s+")
_SPACE_BEFORE_TAG = re.compile(r"\s+<")
_SPACE_AFTER_TAG = re.compile(r">\s+")
_LONE_ELEMENT = re.compile(r"(<([a-z][\w:.-]*)(?:\s[^>]*)?>)</\2>", re.IGNORECASE)


def make_soup(text: str) -> BeautifulSoup:
    """Parse markup with the lenient builder used everywhere in the package."""
    return BeautifulSoup(text, "html.parser", multi_valued_attributes=None)


def element_children(tag: Tag) -> list[Tag]:
    """Return the element children of a tag in document order."""
    return [child for child in tag.children if isinstance(child, Tag)]


@dataclass(frozen=True, eq=False)
class Document:
    """A parsed HTML page."""

    root: BeautifulSoup
    source_text: str = ""
    base_url: str = ""

    def elements(self) -> Iterator[Tag]:
        """Yield every element in pre-order."""
        yield from self.root.find_all(True)

    def resolve(self, path: tuple[int, ...], tag_name: str | None = None) -> Tag:
        """
        Follow an element-child index path from the root.

        Args:
            path: Element-child indices from the document root
            tag_name: Expected tag name of the target, if known

        Returns:
            The element at the path

        Raises:
            StaleNodeError: If the path no longer leads to a matching element
        """
        node: Tag = self.root
        for depth, index in enumerate(path):
            children = element_children(node)
            if index >= len(children):
                raise StaleNodeError(
                    _path_id(path), f"index {index} out of range at depth {depth}"
                )
            node = children[index]
        if node is self.root:
            raise StaleNodeError(_path_id(path), "path does not name an element")
        if tag_name is not None and node.name != tag_name:
            raise StaleNodeError(
                _path_id(path), f"expected <{tag_name}> but found <{node.name}>"
            )
        return node

    def path_of(self, tag: Tag) -> tuple[int, ...]:
        """Return the element-child index path of an element of this document."""
        path: list[int] = []
        node = tag
        while node.parent is not None:
            parent = node.parent
            index = next(
                i for i, child in enumerate(element_children(parent)) if child is node
            )
            path.append(index)
            node = parent
        return tuple(reversed(path))

    def node(self, tag: Tag) -> NodeRef:
        """Return a stable reference to an element of this document."""
        return NodeRef(path=self.path_of(tag), tag_name=tag.name, document=self)

    def node_from_path_id(self, path_id: str) -> NodeRef:
        """
        Build a reference from a dot-joined path such as ``0.1.3``.

        Raises:
            StaleNodeError: If the path does not resolve
        """
        try:
            path = tuple(int(part) for part in path_id.split(".") if part != "")
        except ValueError as exc:
            raise StaleNodeError(path_id, "not a node path") from exc
        tag = self.resolve(path)
        return NodeRef(path=path, tag_name=tag.name, document=self)

    def positions(self) -> dict[int, int]:
        """Map ``id(element)`` to its pre-order index."""
        return {id(tag): index for index, tag in enumerate(self.elements())}

    def serialize(self) -> str:
        """Serialize the whole document canonically."""
        return serialize_node(self.root)


@dataclass(frozen=True)
class NodeRef:
    """Reference to an element by its path from the document root."""

    path: tuple[int, ...]
    tag_name: str
    document: Document = field(compare=False, repr=False)

    @property
    def path_id(self) -> str:
        """Dot-joined path used in ids and reports."""
        return _path_id(self.path)

    def resolve(self) -> Tag:
        """
        Return the referenced element.

        Raises:
            StaleNodeError: If the document changed under the reference
        """
        return self.document.resolve(self.path, self.tag_name)


@dataclass(frozen=True)
class HtmlSnippet:
    """A piece of HTML text as reported or generated."""

    text: str

    @property
    def normalized(self) -> str:
        """Canonical, whitespace-insensitive form used for matching."""
        return normalize(self.text)

    @property
    def is_start_tag_only(self) -> bool:
        """Whether the text is a lone start tag such as ``<html lang="en">``."""
        return _start_tag_needle(self.text) is not None


def _path_id(path: tuple[int, ...]) -> str:
    return ".".join(str(index) for index in path)


def parse_document(source: str | bytes, base_url: str = "") -> Document:
    """
    Parse HTML leniently.

    Malformed markup is repaired the way ``html.parser`` does it. Bytes are
    decoded as UTF-8 with replacement characters. Input that the builder
    rejects outright degrades to a document holding a single text node.

    Args:
        source: HTML text or raw bytes
        base_url: URL used to resolve relative references

    Returns:
        The parsed document
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8", errors="replace")
    else:
        text = source
    try:
        soup = make_soup(text)
    except (ParserRejectedMarkup, AssertionError, ValueError):
        soup = make_soup("")
        _ = soup.append(NavigableString(text))
    return Document(root=soup, source_text=text, base_url=base_url)


def _escape_text(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attribute(value: str) -> str:
    return _escape_text(value).replace('"', "&quot;")


def _attribute_items(tag: Tag) -> list[tuple[str, str]]:
    items: list[tuple[str, str]] = []
    for name, value in tag.attrs.items():
        values: object = value
        if isinstance(values, list):
            parts: list[object] = list(values)  # pyright: ignore
            text = " ".join(str(v) for v in parts)
        else:
            text = "" if values is None else str(values)
        items.append((name, text))
    return sorted(items)


def start_tag(tag: Tag) -> str:
    """Return the canonical start tag of an element, attributes sorted."""
    attributes = "".join(
        f' {name}="{_escape_attribute(value)}"' for name, value in _attribute_items(tag)
    )
    return f"<{tag.name}{attributes}>"


def _serialize_into(node: PageElement, out: list[str]) -> None:
    match node:
        case Doctype():
            out.append(f"<!DOCTYPE {node}>")
        case Comment():
            out.append(f"<!--{node}-->")
        case CData():
            out.append(f"<![CDATA[{node}]]>")
        case ProcessingInstruction():
            out.append(f"<?{node}>")
        case Declaration():
            out.append(f"<!{node}>")
        case NavigableString():
            parent = node.parent
            if parent is not None and parent.name in RAW_TEXT_ELEMENTS:
                out.append(str(node))
            else:
                out.append(_escape_text(str(node)))
        case BeautifulSoup():
            for child in node.children:
                _serialize_into(child, out)
        case Tag():
            out.append(start_tag(node))
            if node.name in VOID_ELEMENTS and not node.contents:
                return
            for child in node.children:
                _serialize_into(child, out)
            out.append(f"</{node.name}>")
        case _:
            out.append(_escape_text(str(node)))


def serialize_node(node: PageElement) -> str:
    """
    Serialize a node canonically.

    Attributes are sorted, text is escaped, script and style contents are
    emitted verbatim and void elements have no end tag. Parsing the output
    again yields an equivalent tree.
    """
    out: list[str] = []
    _serialize_into(node, out)
    return "".join(out)


def _collapse(serialized: str) -> str:
    collapsed = _WHITESPACE_RUN.sub(" ", serialized).strip()
    return _SPACE_AFTER_TAG.sub(">", _SPACE_BEFORE_TAG.sub("<", collapsed))


@lru_cache(maxsize=4096)
def normalize(text: str) -> str:
    """
    Return the canonical whitespace-insensitive form of an HTML fragment.

    The fragment is parsed, re-serialized with sorted attributes, runs of
    whitespace collapse to one space and whitespace next to tags is dropped.
    ``normalize(normalize(x)) == normalize(x)``.
    """
    return _collapse(serialize_node(make_soup(text)))


def _start_tag_needle(text: str) -> str | None:
    if "</" in text:
        return None
    match = _LONE_ELEMENT.fullmatch(normalize(text))
    if match is None:
        return None
    return match.group(1)


def find_segment(document: Document, snippet: HtmlSnippet | str) -> NodeRef | None:
    """
    Locate the deepest element whose canonical form contains the snippet.

    The search descends from the root, always entering the first child that
    still contains the snippet. A lone start tag (``<html lang="en">``)
    matches elements by their start tag regardless of their children.

    Args:
        document: The document to search
        snippet: The HTML to look for

    Returns:
        A reference to the matching element, or None when nothing matches
    """
    text = snippet.text if isinstance(snippet, HtmlSnippet) else snippet
    needle = _start_tag_needle(text) or normalize(text)
    if not needle:
        return None

    cache: dict[int, str] = {}

    def contains(tag: Tag) -> bool:
        key = id(tag)
        if key not in cache:
            cache[key] = _collapse(serialize_node(tag))
        return needle in cache[key]

    current: Tag | None = None
    candidates = element_children(document.root)
    while True:
        match = next((child for child in candidates if contains(child)), None)
        if match is None:
            break
        current = match
        candidates = element_children(match)
    if current is None:
        return None
    return document.node(current)

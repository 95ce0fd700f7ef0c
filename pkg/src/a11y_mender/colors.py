"""
Color resolution and WCAG contrast for the a11y-mender application.

Only inline ``style`` declarations are considered; stylesheets and computed
styles are out of reach without a browser, so results are approximate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from bs4 import Tag
from PIL import ImageColor

from .dom import NodeRef

_HEX_COLOR = re.compile(r"#([0-9a-f]{3,4}|[0-9a-f]{6}|[0-9a-f]{8})")
_RGB_FUNCTION = re.compile(r"rgba?\(([^)]*)\)")
_SHORTHAND_TOKEN = re.compile(r"[a-z-]+\([^)]*\)|#[0-9a-f]+|[^\s,/]+")
_IMPORTANT = re.compile(r"\s*!\s*important\s*$")


def _number(token: str) -> float:
    value = float(token)
    if not math.isfinite(value):
        msg = f"not a finite number: {token!r}"
        raise ValueError(msg)
    return value


def _channel(token: str) -> int:
    token = token.strip()
    if token.endswith("%"):
        return _clamp(round(_number(token[:-1]) * 2.55))
    return _clamp(round(_number(token)))


def _alpha(token: str) -> float:
    token = token.strip()
    if token.endswith("%"):
        return min(max(_number(token[:-1]) / 100, 0.0), 1.0)
    return min(max(_number(token), 0.0), 1.0)


@dataclass(frozen=True)
class ColorValue:
    """An sRGB color with straight alpha."""

    r: int
    g: int
    b: int
    alpha: float = 1.0

    @classmethod
    def parse(cls, text: str) -> ColorValue | None:
        """
        Parse a CSS color.

        Hex (3, 4, 6 or 8 digits), ``rgb()``/``rgba()``, ``transparent``, named
        colors and ``hsl()`` are understood; anything else yields None.
        """
        value = _IMPORTANT.sub("", text.strip().lower())
        if not value:
            return None
        if value == "transparent":
            return cls(0, 0, 0, 0.0)
        if match := _HEX_COLOR.fullmatch(value):
            digits = match.group(1)
            if len(digits) in (3, 4):
                digits = "".join(ch * 2 for ch in digits)
            alpha = int(digits[6:8], 16) / 255 if len(digits) == 8 else 1.0
            return cls(
                int(digits[0:2], 16), int(digits[2:4], 16), int(digits[4:6], 16), alpha
            )
        if match := _RGB_FUNCTION.fullmatch(value):
            parts = [p for p in re.split(r"[\s,/]+", match.group(1).strip()) if p]
            try:
                if len(parts) == 3:
                    return cls(*(_channel(p) for p in parts))
                if len(parts) == 4:
                    r, g, b = (_channel(p) for p in parts[:3])
                    return cls(r, g, b, _alpha(parts[3]))
            except (ValueError, OverflowError):
                return None
            return None
        try:
            rgb = ImageColor.getrgb(value)
        except (ValueError, OverflowError):
            return None
        if len(rgb) == 4:
            return cls(rgb[0], rgb[1], rgb[2], rgb[3] / 255)
        return cls(rgb[0], rgb[1], rgb[2])

    @property
    def hex(self) -> str:
        """``#rrggbb`` form, alpha dropped."""
        return f"#{self.r:02x}{self.g:02x}{self.b:02x}"

    def composite_over(self, backdrop: ColorValue) -> ColorValue:
        """Alpha-composite this color over an opaque backdrop."""
        if self.alpha >= 1.0:
            return self
        a = self.alpha
        return ColorValue(
            round(self.r * a + backdrop.r * (1 - a)),
            round(self.g * a + backdrop.g * (1 - a)),
            round(self.b * a + backdrop.b * (1 - a)),
        )


WHITE = ColorValue(255, 255, 255)
BLACK = ColorValue(0, 0, 0)


def _clamp(channel: int) -> int:
    return min(max(channel, 0), 255)


def parse_inline_style(style: str) -> dict[str, str]:
    """Split a ``style`` attribute into lower-cased properties; later ones win."""
    declarations: dict[str, str] = {}
    for declaration in style.split(";"):
        name, sep, value = declaration.partition(":")
        if sep and name.strip():
            declarations[name.strip().lower()] = value.strip()
    return declarations


def background_color(declarations: dict[str, str]) -> ColorValue | None:
    """Background color from ``background-color`` or the ``background`` shorthand."""
    if "background-color" in declarations:
        return ColorValue.parse(declarations["background-color"])
    shorthand = declarations.get("background")
    if not shorthand:
        return None
    for token in _SHORTHAND_TOKEN.findall(_IMPORTANT.sub("", shorthand.lower())):
        if token.startswith("url("):
            continue
        if (color := ColorValue.parse(token)) is not None:
            return color
    return None


def _lineage(tag: Tag) -> list[Tag]:
    chain = [tag]
    chain.extend(parent for parent in tag.parents if parent.name != "[document]")
    return chain


def resolve_tag_colors(tag: Tag) -> tuple[ColorValue, ColorValue]:
    """
    Resolve the effective text and background colors of an element.

    Background layers are composited from the nearest opaque ancestor (or a
    white canvas) down to the element; the text color is the nearest declared
    ``color`` (or black) composited over that background.

    Returns:
        ``(foreground, background)``, both opaque
    """
    lineage = _lineage(tag)
    foreground: ColorValue | None = None
    for element in lineage:
        declared = parse_inline_style(str(element.get("style") or "")).get("color")
        if declared and (color := ColorValue.parse(declared)) is not None:
            foreground = color
            break

    layers: list[ColorValue] = []
    for element in lineage:
        declarations = parse_inline_style(str(element.get("style") or ""))
        color = background_color(declarations)
        if color is None or color.alpha <= 0:
            continue
        layers.append(color)
        if color.alpha >= 1.0:
            break
    background = WHITE
    for layer in reversed(layers):
        background = layer.composite_over(background)
    return (foreground or BLACK).composite_over(background), background


def resolve_colors(node: NodeRef) -> tuple[ColorValue, ColorValue]:
    """Resolve ``(foreground, background)`` of a referenced element."""
    return resolve_tag_colors(node.resolve())


def _linearize(channel: int) -> float:
    s = channel / 255
    return s / 12.92 if s <= 0.03928 else ((s + 0.055) / 1.055) ** 2.4


def relative_luminance(color: ColorValue) -> float:
    """WCAG relative luminance of an opaque color."""
    return (
        0.2126 * _linearize(color.r)
        + 0.7152 * _linearize(color.g)
        + 0.0722 * _linearize(color.b)
    )


def contrast_ratio(foreground: ColorValue, background: ColorValue) -> float:
    """
    WCAG contrast ratio between two colors, in ``[1, 21]``.

    Translucent colors are first composited over white. The ratio is symmetric.
    """
    first = relative_luminance(foreground.composite_over(WHITE))
    second = relative_luminance(background.composite_over(WHITE))
    lighter, darker = max(first, second), min(first, second)
    return (lighter + 0.05) / (darker + 0.05)

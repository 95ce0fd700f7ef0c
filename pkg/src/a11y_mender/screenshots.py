"""
Screenshot handling for the a11y-mender application.

Screenshots are captured outside the tool (full page height at a fixed
viewport width) and passed in as PNG or JPEG files.
"""

from __future__ import annotations

import base64
import hashlib
import io
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, UnidentifiedImageError

from .errors import ScreenshotError

DEFAULT_VIEWPORT_WIDTH = 1440
DEFAULT_CAPTURE_NOTE = "full page height"

_MEDIA_TYPES = {"PNG": "image/png", "JPEG": "image/jpeg"}


@dataclass(frozen=True)
class ImageAttachment:
    """An image sent along with a prompt."""

    path: Path
    media_type: str
    digest: str
    """SHA-256 of the file bytes; part of the prompt fingerprint."""

    data: bytes = field(compare=False, repr=False)

    def data_url(self) -> str:
        """Base64 ``data:`` URL for chat-completion image parts."""
        encoded = base64.b64encode(self.data).decode("ascii")
        return f"data:{self.media_type};base64,{encoded}"


@dataclass(frozen=True)
class ScreenshotRef:
    """A rendered view of a page."""

    path: Path
    viewport_width: int = DEFAULT_VIEWPORT_WIDTH
    note: str = DEFAULT_CAPTURE_NOTE

    def describe(self) -> str:
        """Short description used in prompts."""
        return f"{self.path.name} (viewport {self.viewport_width}px, {self.note})"

    def load(self) -> ImageAttachment:
        """
        Read and validate the screenshot.

        Returns:
            The image as a prompt attachment

        Raises:
            ScreenshotError: If the file is missing or not a PNG or JPEG image
        """
        try:
            data = self.path.read_bytes()
        except OSError as exc:
            raise ScreenshotError(self.path, exc.strerror or str(exc)) from exc
        try:
            with Image.open(io.BytesIO(data)) as image:
                image_format = image.format
                image.verify()
        except (UnidentifiedImageError, OSError, SyntaxError) as exc:
            raise ScreenshotError(self.path, "not a decodable image") from exc
        media_type = _MEDIA_TYPES.get(image_format or "")
        if media_type is None:
            raise ScreenshotError(self.path, f"unsupported format {image_format}")
        return ImageAttachment(
            path=self.path,
            media_type=media_type,
            digest=hashlib.sha256(data).hexdigest(),
            data=data,
        )

"""
Custom error classes for the a11y-mender application.

This module provides the exception hierarchy used throughout the application.
Every exception formats its own message and keeps the offending value around
so callers can report it without re-parsing the text.
"""

from pathlib import Path
from typing import NoReturn


class A11yMenderError(Exception):
    """Base class for all a11y-mender errors."""


class TaxonomyFileNotFoundError(A11yMenderError, FileNotFoundError):
    """Error raised when the taxonomy file does not exist."""

    def __init__(self, path: Path) -> None:
        self.path = path
        super().__init__(f"Taxonomy file not found: {path}")


class TaxonomySchemaError(A11yMenderError, ValueError):
    """Error raised when the taxonomy file does not match the expected schema."""

    def __init__(self, details: str) -> None:
        self.details = details
        super().__init__(f"Invalid taxonomy file: {details}")


class DuplicateViolationTypeError(A11yMenderError, ValueError):
    """Error raised when a violation type name appears twice in a taxonomy."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Duplicate violation type in taxonomy: {name}")


class UnknownViolationTypeError(A11yMenderError, KeyError):
    """Error raised when a violation type name is not in the registry."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Unknown violation type: {name}")

    def __str__(self) -> str:
        """Return the message without KeyError's quoting."""
        return str(self.args[0])


class UnknownRuleError(A11yMenderError, KeyError):
    """Error raised when a rule id has no implementation."""

    def __init__(self, rule_id: str) -> None:
        self.rule_id = rule_id
        super().__init__(f"Unknown rule: {rule_id}")

    def __str__(self) -> str:
        """Return the message without KeyError's quoting."""
        return str(self.args[0])


class StaleNodeError(A11yMenderError, LookupError):
    """Error raised when a node reference no longer resolves in its document."""

    def __init__(self, path: str, details: str | None = None) -> None:
        self.path = path
        message = f"Node reference {path or '<root>'} no longer resolves"
        if details is not None:
            message = f"{message}: {details}"
        super().__init__(message)


class ScreenshotError(A11yMenderError, ValueError):
    """Error raised when a screenshot file is missing or cannot be decoded."""

    def __init__(self, path: Path, details: str | None = None) -> None:
        self.path = path
        message = f"Unusable screenshot {path}"
        if details is not None:
            message = f"{message}: {details}"
        super().__init__(message)


class PromptError(A11yMenderError, ValueError):
    """Error raised when a prompt cannot be built from the available inputs."""

    def __init__(self, details: str) -> None:
        self.details = details
        super().__init__(f"Cannot build prompt: {details}")


class ProviderError(A11yMenderError):
    """Base class for failures talking to an LLM or embedding provider."""

    transient: bool = False
    """Whether a retry may succeed."""


class CapabilityError(ProviderError):
    """Error raised when a prompt needs a capability the provider lacks."""

    def __init__(self, provider: str, capability: str) -> None:
        self.provider = provider
        self.capability = capability
        super().__init__(f"Provider {provider} does not support {capability}")


class LlmTimeoutError(ProviderError):
    """Error raised when the provider does not answer in time."""

    transient = True

    def __init__(self, details: str | None = None) -> None:
        message = "Provider did not answer in time"
        if details is not None:
            message = f"{message}: {details}"
        super().__init__(message)


class RateLimitError(ProviderError):
    """Error raised when the provider throttles requests."""

    transient = True

    def __init__(self, details: str | None = None) -> None:
        message = "Provider rate limit reached"
        if details is not None:
            message = f"{message}: {details}"
        super().__init__(message)


class ProviderRejectedError(ProviderError):
    """Error raised when the provider refuses a request."""

    def __init__(self, status_code: int | None, details: str | None = None) -> None:
        self.status_code = status_code
        self.transient = status_code is not None and status_code >= 500
        message = "Provider rejected the request"
        if status_code is not None:
            message = f"{message} with status {status_code}"
        if details is not None:
            message = f"{message}: {details}"
        super().__init__(message)


class DimensionMismatchError(A11yMenderError, ValueError):
    """Error raised when two embedding vectors have different lengths."""

    def __init__(self, left: int, right: int) -> None:
        self.left = left
        self.right = right
        super().__init__(f"Vector dimensions differ: {left} != {right}")


class EmptyScoresError(A11yMenderError, ValueError):
    """Error raised when an average is requested over no scores."""

    def __init__(self) -> None:
        super().__init__("Cannot average an empty list of violation scores")


class UndefinedImprovementError(A11yMenderError, ZeroDivisionError):
    """Error raised when the improvement ratio has a zero initial score."""

    def __init__(self) -> None:
        super().__init__("Improvement is undefined when the initial score is 0")


class DatasetSchemaError(A11yMenderError, ValueError):
    """Error raised when a dataset or report file violates its schema."""

    def __init__(
        self,
        details: str,
        *,
        index: int | None = None,
        entry_id: str | None = None,
        line: int | None = None,
    ) -> None:
        self.details = details
        self.index = index
        self.entry_id = entry_id
        self.line = line
        location: list[str] = []
        if index is not None:
            location.append(f"entry {index}")
        if entry_id is not None:
            location.append(f"id {entry_id}")
        if line is not None:
            location.append(f"line {line}")
        prefix = "Dataset error"
        if location:
            prefix = f"{prefix} ({', '.join(location)})"
        super().__init__(f"{prefix}: {details}")


class FetchError(A11yMenderError):
    """Error raised when a page cannot be downloaded."""

    def __init__(self, url: str, details: str) -> None:
        self.url = url
        super().__init__(f"Failed to fetch {url}: {details}")


def raise_schema_error(error: Exception, **location: int | str | None) -> NoReturn:
    """Raise a DatasetSchemaError with the given error as the cause."""
    # Kept out of line so the raise can sit inside try blocks (TRY301)
    index = location.get("index")
    entry_id = location.get("entry_id")
    line = location.get("line")
    raise DatasetSchemaError(
        str(error),
        index=index if isinstance(index, int) else None,
        entry_id=entry_id if isinstance(entry_id, str) else None,
        line=line if isinstance(line, int) else None,
    ) from error


def raise_taxonomy_error(error: Exception) -> NoReturn:
    """Raise a TaxonomySchemaError with the given error as the cause."""
    raise TaxonomySchemaError(str(error)) from error

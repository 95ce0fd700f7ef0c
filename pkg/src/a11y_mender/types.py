"""Type definitions and interfaces for the a11y-mender application."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any, Protocol, runtime_checkable

if TYPE_CHECKING:
    from .models import ProviderConfig
    from .prompts import PromptBundle


@dataclass
class CommandLineArgs:
    """Command line arguments for the a11y-mender application."""

    command: str | None
    """Subcommand to run (detect, correct, apply, evaluate, benchmark, ...)."""

    version: bool = False
    """Whether to show the version information and exit."""

    input_path: Path | None = None
    """Primary input: HTML page, report or dataset. ``-`` reads stdin."""

    corrections_path: Path | None = None
    """Correction report consumed by ``apply``."""

    before_path: Path | None = None
    """Report before correction, for ``evaluate``."""

    after_path: Path | None = None
    """Report after correction, for ``evaluate``."""

    output_path: Path | None = None
    """Where to write the result; stdout when unset."""

    url: str | None = None
    """Page URL (context for detect, target for fetch)."""

    domain: str | None = None
    """Page domain such as 'Health and Wellness'."""

    screenshot: Path | None = None
    """Screenshot of the page for semantic detection and visual corrections."""

    no_screenshot: bool = False
    """Explicitly run without a screenshot."""

    semantic: bool = False
    """Whether to run the LLM semantic detector."""

    semantic_recheck: bool = False
    """Whether correction candidates are re-checked by the semantic detector."""

    best_practices: bool = False
    """Whether page-level best-practice rules run."""

    download_images: bool = False
    """Whether image supplementary URLs are downloaded."""

    strategy: str = "guided"
    """Correction strategy name."""

    taxonomy_path: Path | None = None
    """Taxonomy file overriding the configured one."""

    provider: str | None = None
    """LLM provider: openai or mock."""

    mock_script: Path | None = None
    """Script file for the mock provider."""

    model: str | None = None
    """Model name overriding the configured one."""

    endpoint: str | None = None
    """API base URL overriding the configured one."""

    timeout: float | None = None
    """Request timeout in seconds."""

    parallel: int | None = None
    """Maximum concurrent provider requests."""

    retries: int | None = None
    """Retries per provider request."""

    embedder: str | None = None
    """Embedding backend for similarity: endpoint or hashing."""

    pretty: bool = False
    """Whether JSON output is indented."""

    output_format: str | None = None
    """Preferred output format for listings: table, plain, json."""

    verbose: bool = False
    """Whether debug messages are shown."""

    taxonomy_action: str | None = None
    """Taxonomy subcommand: list or show."""

    type_name: str | None = None
    """Violation type name for ``taxonomy show``."""

    category: str | None = None
    """Category filter for ``taxonomy list``."""


@dataclass(frozen=True)
class FetchedPage:
    """A downloaded page."""

    url: str
    """Final URL after redirects."""

    status_code: int
    """HTTP status of the final response."""

    content: bytes
    """Raw response body."""

    content_type: str
    """Value of the Content-Type header."""

    redirects: int
    """Number of redirects followed."""


@runtime_checkable
class HttpClient(Protocol):
    """Protocol for HTTP clients used in the application."""

    def post(
        self, url: str, *, headers: dict[str, str], json: dict[str, Any], timeout: float
    ) -> dict[str, Any]:
        """
        Send a POST request to the specified URL.

        Args:
            url: The URL to send the request to
            headers: HTTP headers to include in the request
            json: JSON payload to send in the request body
            timeout: Request timeout in seconds

        Returns:
            The parsed JSON response as a dictionary

        Raises:
            Exception: If the request fails
        """
        ...

    def get(self, url: str, *, timeout: float, max_redirects: int = 5) -> FetchedPage:
        """
        Send a GET request, following redirects.

        Args:
            url: The URL to fetch
            timeout: Request timeout in seconds
            max_redirects: Maximum number of redirects to follow

        Returns:
            The fetched page

        Raises:
            Exception: If the request fails
        """
        ...


@runtime_checkable
class ArgumentParser(Protocol):
    """Protocol for argument parsing."""

    def parse_args(self) -> CommandLineArgs:
        """
        Parse command-line arguments.

        Returns:
            CommandLineArgs containing the parsed arguments
        """
        ...


@runtime_checkable
class ConfigProvider(Protocol):
    """Protocol for configuration providers."""

    def get_provider_config(self) -> ProviderConfig:
        """Get the provider settings."""
        ...

    def get_taxonomy_path(self) -> Path:
        """Get the taxonomy file path."""
        ...

    def get_api_key(self) -> str:
        """Get the provider API key."""
        ...


@runtime_checkable
class Console(Protocol):
    """Protocol for console operations."""

    def success(self, message: str, title: str | None = None) -> None:
        """Display a success message."""
        ...

    def info(self, message: str, title: str | None = None) -> None:
        """Display an informational message."""
        ...

    def warning(self, message: str, title: str | None = None) -> None:
        """Display a warning message."""
        ...

    def error(self, message: str, title: str | None = None) -> None:
        """Display an error message."""
        ...

    def debug(self, message: str) -> None:
        """Display a debug message."""
        ...

    def exception(self, message: str, exc_info: Exception | None = None) -> None:
        """Display an exception message with optional exception details."""
        ...


@runtime_checkable
class LlmProvider(Protocol):
    """Protocol for chat-style language model providers."""

    name: str
    """Short provider name used in messages."""

    supports_images: bool
    """Whether image attachments can be sent."""

    def complete(self, bundle: PromptBundle) -> str:
        """
        Send a prompt and return the raw answer text.

        Args:
            bundle: The prompt to send

        Returns:
            The model's answer

        Raises:
            ProviderError: If the provider fails
        """
        ...


@runtime_checkable
class Embedder(Protocol):
    """Protocol for text embedding backends."""

    def embed(self, text: str) -> list[float]:
        """
        Embed a text.

        Args:
            text: The text to embed

        Returns:
            The embedding vector
        """
        ...

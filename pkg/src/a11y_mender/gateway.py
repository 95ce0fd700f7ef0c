"""
LLM gateway module for the a11y-mender application.

This module provides the OpenAI-compatible chat-completions provider, a
deterministic scripted provider for tests and offline runs, and the
``LlmGateway`` that adds capability checks, a cap on concurrent requests and
bounded retries on transient failures.
"""

from __future__ import annotations

import threading
import time
from collections.abc import Callable
from pathlib import Path
from typing import Any, Literal

import httpx
from pydantic import BaseModel, Field, ValidationError

from .errors import (
    CapabilityError,
    LlmTimeoutError,
    ProviderError,
    ProviderRejectedError,
    RateLimitError,
)
from .http_client import HttpxClient
from .models import ChatCompletionResponse, ProviderConfig
from .prompts import PromptBundle
from .types import Console, HttpClient, LlmProvider


def request_json(
    http_client: HttpClient,
    url: str,
    *,
    headers: dict[str, str],
    payload: dict[str, Any],
    timeout: float,
) -> dict[str, Any]:
    """
    POST a JSON payload and map transport failures to provider errors.

    Raises:
        LlmTimeoutError: On timeouts and connection failures
        RateLimitError: On HTTP 429
        ProviderRejectedError: On any other error status
    """
    try:
        return http_client.post(url, headers=headers, json=payload, timeout=timeout)
    except httpx.TimeoutException as exc:
        raise LlmTimeoutError(type(exc).__name__) from exc
    except httpx.HTTPStatusError as exc:
        status = exc.response.status_code
        if status == 429:
            raise RateLimitError(f"HTTP {status}") from exc
        raise ProviderRejectedError(status, exc.response.reason_phrase) from exc
    except httpx.RequestError as exc:
        raise LlmTimeoutError(f"connection failed: {type(exc).__name__}") from exc


class ChatCompletionsProvider:
    """Provider for OpenAI-compatible ``/chat/completions`` endpoints."""

    name: str
    supports_images: bool
    provider_config: ProviderConfig
    http_client: HttpClient

    def __init__(
        self,
        provider_config: ProviderConfig,
        http_client: HttpClient | None = None,
        *,
        supports_images: bool = True,
    ):
        """
        Initialize the provider.

        Args:
            provider_config: Endpoint, model, key and timeout
            http_client: HTTP client to use; httpx when None
            supports_images: Whether the model accepts image parts
        """
        self.name = provider_config.model
        self.supports_images = supports_images
        self.provider_config = provider_config
        self.http_client = http_client or HttpxClient()

    def _payload(self, bundle: PromptBundle) -> dict[str, Any]:
        text = bundle.render()
        content: str | list[dict[str, Any]] = text
        if bundle.attachments:
            content = [{"type": "text", "text": text}]
            content.extend(
                {"type": "image_url", "image_url": {"url": a.data_url()}}
                for a in bundle.attachments
            )
        return {
            "model": self.provider_config.model,
            "messages": [{"role": "user", "content": content}],
            "temperature": 0,
        }

    def complete(self, bundle: PromptBundle) -> str:
        """
        Send a prompt and return the answer text.

        Raises:
            ProviderError: If the request fails or the answer has no choices
        """
        url = f"{self.provider_config.endpoint.rstrip('/')}/chat/completions"
        resp = request_json(
            self.http_client,
            url,
            headers=self.provider_config.headers(),
            payload=self._payload(bundle),
            timeout=self.provider_config.timeout,
        )
        try:
            return ChatCompletionResponse.model_validate(resp).response_text
        except ValidationError as exc:
            raise ProviderRejectedError(None, "unexpected response shape") from exc


# ----------------------------------------------------------------------
# Scripted provider
# ----------------------------------------------------------------------
ScriptedFailure = Literal["timeout", "rate-limit", "rejected"]


class MockRule(BaseModel):
    """Answer for every prompt matching the given template and text."""

    template: str | None = None
    contains: str | None = None
    response: str = ""
    error: ScriptedFailure | None = None


class MockScript(BaseModel):
    """Scripted answers keyed by prompt fingerprint or by matching rules."""

    responses: dict[str, str] = Field(default_factory=dict)
    rules: list[MockRule] = Field(default_factory=list)
    default: str = ""
    supports_images: bool = True


def load_mock_script(path: Path) -> MockScript:
    """
    Load a mock script from a JSON file.

    Raises:
        FileNotFoundError: If the file does not exist
        pydantic.ValidationError: If the file does not match the script schema
    """
    return MockScript.model_validate_json(path.read_bytes())


def _scripted_failure(kind: ScriptedFailure) -> ProviderError:
    match kind:
        case "timeout":
            return LlmTimeoutError("scripted")
        case "rate-limit":
            return RateLimitError("scripted")
        case "rejected":
            return ProviderRejectedError(400, "scripted")


class MockProvider:
    """
    Deterministic provider answering from a script or a responder function.

    The answer depends only on the prompt bundle, so repeated runs produce
    identical output. Every call is recorded in ``calls``.
    """

    name: str = "mock"
    supports_images: bool

    def __init__(
        self,
        script: MockScript | None = None,
        *,
        responder: Callable[[PromptBundle], str] | None = None,
        supports_images: bool | None = None,
    ):
        self.script = script or MockScript()
        self.responder = responder
        self.supports_images = (
            self.script.supports_images if supports_images is None else supports_images
        )
        self.calls: list[PromptBundle] = []
        self._lock = threading.Lock()

    def complete(self, bundle: PromptBundle) -> str:
        """Answer a prompt from the script."""
        with self._lock:
            self.calls.append(bundle)
        if self.responder is not None:
            return self.responder(bundle)
        scripted = self.script.responses.get(bundle.fingerprint())
        if scripted is not None:
            return scripted
        text = bundle.render()
        for rule in self.script.rules:
            if rule.template is not None and rule.template != bundle.template:
                continue
            if rule.contains is not None and rule.contains not in text:
                continue
            if rule.error is not None:
                raise _scripted_failure(rule.error)
            return rule.response
        return self.script.default


# ----------------------------------------------------------------------
# Gateway
# ----------------------------------------------------------------------
class LlmGateway:
    """Thread-safe front of a provider with a concurrency cap and retries."""

    provider: LlmProvider
    retries: int
    backoff: float

    def __init__(
        self,
        provider: LlmProvider,
        *,
        max_parallel: int = 4,
        retries: int = 2,
        backoff: float = 0.5,
        console: Console | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        """
        Initialize the gateway.

        Args:
            provider: The provider to call
            max_parallel: Maximum number of requests in flight
            retries: Retries per request after a transient failure
            backoff: First retry delay in seconds; doubles on every retry
            console: Console for retry warnings
            sleep: Sleep function, replaceable in tests
        """
        self.provider = provider
        self.retries = retries
        self.backoff = backoff
        self._console = console
        self._sleep = sleep
        self._slots = threading.BoundedSemaphore(max(1, max_parallel))
        self._lock = threading.Lock()
        self._calls = 0

    @property
    def call_count(self) -> int:
        """Number of provider requests made so far, retries included."""
        with self._lock:
            return self._calls

    def complete(self, bundle: PromptBundle) -> str:
        """
        Send a prompt, retrying transient failures.

        Args:
            bundle: The prompt

        Returns:
            The raw answer text

        Raises:
            CapabilityError: If the prompt has images the provider cannot take
            ProviderError: If the request still fails after the retry budget
        """
        if bundle.attachments and not self.provider.supports_images:
            raise CapabilityError(self.provider.name, "image attachments")
        attempt = 0
        while True:
            with self._slots:
                with self._lock:
                    self._calls += 1
                try:
                    return self.provider.complete(bundle)
                except ProviderError as exc:
                    if not exc.transient or attempt >= self.retries:
                        raise
                    failure = exc
            delay = self.backoff * 2**attempt
            attempt += 1
            if self._console:
                self._console.warning(
                    f"{failure}; retry {attempt}/{self.retries} in {delay:.1f}s",
                    title=bundle.template,
                )
            self._sleep(delay)


def complete(provider: LlmProvider | LlmGateway, bundle: PromptBundle) -> str:
    """Send a prompt through a provider or gateway and return the raw text."""
    return provider.complete(bundle)

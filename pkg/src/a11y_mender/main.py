"""
Main module for the a11y-mender application.

This module provides the command-line entry point. It wires the argument
parser, the configuration provider and the provider and embedder factories
into ``A11yMenderApp`` so the application itself stays free of concrete
backends.
"""

import sys
from pathlib import Path

from .app import A11yMenderApp
from .arg_parser import DefaultArgumentParser
from .config_provider import DefaultConfigProvider
from .embeddings import EndpointEmbedder, HashingEmbedder
from .gateway import ChatCompletionsProvider, MockProvider, load_mock_script
from .http_client import HttpxClient
from .models import ProviderConfig
from .types import Console, Embedder, HttpClient, LlmProvider


def create_llm_provider(
    name: str,
    provider_config: ProviderConfig,
    mock_script: Path | None = None,
    console: Console | None = None,
    http_client: HttpClient | None = None,
) -> LlmProvider:
    """
    Create an LLM provider.

    Args:
        name: ``openai`` for any OpenAI-compatible endpoint, ``mock`` for the
            scripted provider
        provider_config: Endpoint, model, key and timeout
        mock_script: Script file for the mock provider
        console: Console for configuration warnings
        http_client: Optional HTTP client to use

    Returns:
        The provider

    Raises:
        ValueError: If the name is unknown or the mock script is invalid
    """
    if name == "mock":
        script = load_mock_script(mock_script) if mock_script is not None else None
        return MockProvider(script)
    if name != "openai":
        msg = f"Unknown provider: {name}"
        raise ValueError(msg)
    if not provider_config.api_key.get_secret_value() and console is not None:
        console.warning(
            "A11YMENDER_API_KEY is not set; requests are sent without a key",
            title="config",
        )
    return ChatCompletionsProvider(provider_config, http_client or HttpxClient())


def create_embedder(kind: str, provider_config: ProviderConfig) -> Embedder | None:
    """
    Create the embedder for the similarity study.

    Args:
        kind: ``endpoint``, ``hashing`` or ``none``
        provider_config: Settings for the endpoint embedder

    Returns:
        The embedder, or None when the study is switched off
    """
    match kind:
        case "endpoint":
            return EndpointEmbedder(provider_config)
        case "hashing":
            return HashingEmbedder()
        case _:
            return None


def main() -> int:
    """
    Execute the a11y-mender command line.

    This function creates the application with all its dependencies and runs it.

    Returns:
        Exit code (0 for success, 1 for findings, 2 for errors)
    """
    app = A11yMenderApp(
        arg_parser=DefaultArgumentParser(),
        config_provider=DefaultConfigProvider(),
        provider_factory=create_llm_provider,
        embedder_factory=create_embedder,
    )
    return app.run()


if __name__ == "__main__":
    sys.exit(main())

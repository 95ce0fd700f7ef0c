"""
Test fixtures for mock LLM server testing.

This module provides a context manager that runs the mock OpenAI-compatible
server in a background thread, plus fixtures built on top of it.
"""

import random
import socket
import sys
import threading
import time
from collections.abc import Generator
from contextlib import contextmanager
from pathlib import Path

import pytest
import uvicorn
from pydantic import SecretStr

# Add tests directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from mock_llm_server import mock_server

from a11y_mender.models import ProviderConfig

MOCK_API_KEY = "test-api-key-12345"


def _port_open(port: int) -> bool:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
        return sock.connect_ex(("127.0.0.1", port)) == 0


def _start(port: int) -> None:
    config = uvicorn.Config(
        app=mock_server.app,
        host="127.0.0.1",
        port=port,
        log_level="error",  # Suppress logs during testing
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()


@contextmanager
def run_mock_server(port: int | None = None) -> Generator[str]:
    """
    Context manager to run the mock LLM server in a background thread.

    Args:
        port: The port to run the server on (defaults to random port)

    Yields:
        The server URL
    """
    # Use a random port if not specified to avoid conflicts
    if port is None:
        port = random.randint(9000, 9999)
    mock_server.reset()
    _start(port)

    for _ in range(10):
        time.sleep(0.1)
        if _port_open(port):
            break
    else:
        # If port is still not open, try a different port
        port = random.randint(10000, 10999)
        _start(port)
        time.sleep(0.5)

    try:
        yield f"http://localhost:{port}"
    finally:
        # Server will stop when thread terminates
        mock_server.reset()


def mock_provider_config(server_url: str, **overrides: object) -> ProviderConfig:
    """Provider settings pointing at the mock server."""
    values: dict[str, object] = {
        "endpoint": f"{server_url}/v1",
        "model": "mock-gpt",
        "embedding_model": "mock-embed",
        "api_key": SecretStr(MOCK_API_KEY),
        "timeout": 5.0,
        "retries": 0,
    }
    values.update(overrides)
    return ProviderConfig.model_validate(values)


@pytest.fixture
def running_mock_server() -> Generator[str]:
    """Fixture that provides a running mock LLM server."""
    with run_mock_server() as url:
        yield url

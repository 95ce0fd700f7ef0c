"""
Integration tests for a11y-mender with the mock LLM server.

This module runs whole command-line workflows against the mock
OpenAI-compatible server: fetching pages over HTTP, correcting a detection
report with the chat completions provider and benchmarking with the
endpoint embedder.
"""

import json
import sys
from pathlib import Path

from a11y_mender.app import EXIT_ERROR, EXIT_FINDINGS, EXIT_OK, A11yMenderApp
from a11y_mender.arg_parser import DefaultArgumentParser
from a11y_mender.config_provider import DefaultConfigProvider
from a11y_mender.console import BeautifulConsole
from a11y_mender.main import create_embedder, create_llm_provider
from a11y_mender.models import ProviderConfig

# Add tests directory to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from fixtures.mock_server_fixtures import mock_provider_config, run_mock_server
from mock_llm_server import mock_server


class ServerConfigProvider(DefaultConfigProvider):
    """Config provider pointing at the mock server."""

    def __init__(self, server_url: str) -> None:
        """Remember the server URL."""
        self.server_url = server_url

    def get_provider_config(self) -> ProviderConfig:
        """Return settings for the mock server."""
        return mock_provider_config(self.server_url)


def _run(server_url: str, *argv: str) -> int:
    app = A11yMenderApp(
        arg_parser=DefaultArgumentParser(list(argv)),
        config_provider=ServerConfigProvider(server_url),
        provider_factory=create_llm_provider,
        embedder_factory=create_embedder,
        console=BeautifulConsole(),
    )
    return app.run()


class TestFetchWithMockServer:
    """Test the fetch command against the mock server."""

    def test_fetch_follows_redirects(self, tmp_path, portal_html) -> None:
        """Test that redirects are followed up to the limit."""
        out = tmp_path / "page.html"
        with run_mock_server() as server_url:
            url = f"{server_url}/pages/hop/3"
            code = _run(server_url, "fetch", url, "-o", str(out))

        assert code == EXIT_OK
        assert out.read_text(encoding="utf-8") == portal_html

    def test_too_many_redirects(self, capsys) -> None:
        """Test a redirect chain longer than the limit."""
        with run_mock_server() as server_url:
            code = _run(server_url, "fetch", f"{server_url}/pages/hop/6")

        assert code == EXIT_ERROR
        assert "more than 5 redirects" in capsys.readouterr().err

    def test_missing_page(self, capsys) -> None:
        """Test an error status."""
        with run_mock_server() as server_url:
            code = _run(server_url, "fetch", f"{server_url}/pages/nothing")

        assert code == EXIT_ERROR
        assert "HTTP 404" in capsys.readouterr().err

    def test_non_html_is_saved_with_warning(self, tmp_path, capsys) -> None:
        """Test that other content types are kept but flagged."""
        out = tmp_path / "data.json"
        with run_mock_server() as server_url:
            code = _run(
                server_url, "fetch", f"{server_url}/pages/data.json", "-o", str(out)
            )

        assert code == EXIT_OK
        assert json.loads(out.read_text(encoding="utf-8")) == {"not": "html"}
        assert "not HTML" in capsys.readouterr().err


class TestCorrectionWithMockServer:
    """Test detection and correction through the chat completions provider."""

    def test_detect_then_correct(self, tmp_path, portal_html) -> None:
        """Test that the server's fix is chosen and the rest stay original."""
        page = tmp_path / "portal.html"
        page.write_text(portal_html, encoding="utf-8")
        before = tmp_path / "before.json"
        after = tmp_path / "after.json"

        with run_mock_server() as server_url:
            assert _run(server_url, "detect", str(page), "-o", str(before)) == (
                EXIT_FINDINGS
            )
            assert mock_server.request_count == 0

            code = _run(
                server_url,
                "correct",
                str(before),
                "-o",
                str(after),
                "--strategy",
                "guided-no-reprompt",
            )
            entries = json.loads(after.read_text(encoding="utf-8"))["entries"]
            assert mock_server.request_count == len(entries)

        assert code == EXIT_OK
        corrections = {e["violationName"]: e["correction"] for e in entries}
        assert corrections["html-has-lang"]["chosenHtml"] == '<html lang="en">'
        assert corrections["html-has-lang"]["finalScore"] == 0
        assert corrections["button-name"]["source"] == "original"
        assert corrections["button-name"]["flags"]["notFixed"]

    def test_provider_failure_keeps_originals(self, tmp_path, portal_html) -> None:
        """Test that a failing server leaves every entry unfixed."""
        page = tmp_path / "portal.html"
        page.write_text(portal_html, encoding="utf-8")
        before = tmp_path / "before.json"
        after = tmp_path / "after.json"

        with run_mock_server() as server_url:
            _ = _run(server_url, "detect", str(page), "-o", str(before))
            mock_server.set_failure_mode("bad_request")
            code = _run(server_url, "correct", str(before), "-o", str(after))

        assert code == EXIT_OK
        entries = json.loads(after.read_text(encoding="utf-8"))["entries"]
        assert all(e["correction"]["source"] == "original" for e in entries)
        assert all("status 400" in e["correction"]["error"] for e in entries)


class TestBenchmarkWithMockServer:
    """Test the benchmark command with the endpoint embedder."""

    def test_benchmark(self, tmp_path) -> None:
        """Test a full benchmark run over the bundled corpus."""
        out = tmp_path / "bench.json"
        with run_mock_server() as server_url:
            code = _run(
                server_url,
                "benchmark",
                "--embedder",
                "endpoint",
                "-o",
                str(out),
            )
            assert mock_server.embedding_count == 4

        assert code == EXIT_OK
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["model"] == "mock-gpt"
        assert report["entries"] == 11
        html_lang = next(o for o in report["outcomes"] if o["id"] == "vp-01")
        assert html_lang["finalScore"] == 0
        assert report["rFix"] < report["rInitial"]
        assert report["similarity"]["failures"] == 0

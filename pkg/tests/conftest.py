"""
Configuration for pytest.

This module sets up the test environment for all tests and provides the
fixtures shared by most test modules: the bundled taxonomy, the vitamin
portal pages and the bundled screenshot.
"""

import os
import sys
from pathlib import Path

import pytest

# Add the src directory to sys.path to import modules
src_path = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "src"))
sys.path.insert(0, src_path)

from a11y_mender import config  # noqa: E402
from a11y_mender.dom import Document, parse_document  # noqa: E402
from a11y_mender.screenshots import ScreenshotRef  # noqa: E402
from a11y_mender.taxonomy import TaxonomyRegistry, load_taxonomy  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def registry() -> TaxonomyRegistry:
    """Return the bundled taxonomy."""
    return load_taxonomy(config.BUNDLED_TAXONOMY)


@pytest.fixture
def portal_html() -> str:
    """Return the vitamin portal page with its violations."""
    return (FIXTURES / "vitamin_portal.html").read_text(encoding="utf-8")


@pytest.fixture
def fixed_portal_html() -> str:
    """Return the corrected vitamin portal page."""
    return (FIXTURES / "vitamin_portal_fixed.html").read_text(encoding="utf-8")


@pytest.fixture
def portal_doc(portal_html: str) -> Document:
    """Return the parsed vitamin portal page."""
    return parse_document(portal_html, base_url="https://www.vitaminhealthguide.com/")


@pytest.fixture
def screenshot() -> ScreenshotRef:
    """Return a reference to the bundled screenshot."""
    return ScreenshotRef(config.DATA_DIR / "vitamin_portal.png")

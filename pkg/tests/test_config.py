"""Tests for the config module."""

from pathlib import Path

import pytest

from a11y_mender import config


def test_bundled_data_files_exist():
    """Test that the packaged data files are present."""
    for path in (
        config.BUNDLED_TAXONOMY,
        config.BUNDLED_WCAG_CRITERIA,
        config.BUNDLED_CORPUS,
    ):
        assert path.is_file(), path
    assert config.BUNDLED_TAXONOMY.parent == config.DATA_DIR


def test_taxonomy_path_defaults_to_bundled(monkeypatch: pytest.MonkeyPatch):
    """Test the taxonomy path without override."""
    monkeypatch.setattr(config, "TAXONOMY_PATH", "")
    assert config.get_taxonomy_path() == config.BUNDLED_TAXONOMY


def test_taxonomy_path_override(monkeypatch: pytest.MonkeyPatch):
    """Test the taxonomy path from the environment."""
    monkeypatch.setattr(config, "TAXONOMY_PATH", "/etc/a11y/taxonomy.json")
    assert config.get_taxonomy_path() == Path("/etc/a11y/taxonomy.json")


def test_api_key_required(monkeypatch: pytest.MonkeyPatch):
    """Test that a missing key is reported."""
    monkeypatch.setattr(config, "API_KEY", "")
    with pytest.raises(ValueError, match="A11YMENDER_API_KEY"):
        config.get_api_key()

    monkeypatch.setattr(config, "API_KEY", "sk-test")
    assert config.get_api_key() == "sk-test"

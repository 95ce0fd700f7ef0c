"""
Configuration module for the a11y-mender application.

This module provides configuration values for the application, with defaults
that can be overridden through environment variables.
Environment variables can be set in a .env file at the root of the project.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file if it exists
_ = load_dotenv()

# LLM provider configuration (OpenAI-compatible API)
LLM_ENDPOINT = os.environ.get("A11YMENDER_LLM_ENDPOINT", "https://api.openai.com/v1")
LLM_MODEL = os.environ.get("A11YMENDER_LLM_MODEL", "gpt-4o")
EMBEDDING_MODEL = os.environ.get(
    "A11YMENDER_EMBEDDING_MODEL", "text-embedding-3-small"
)
# NOTE: Only ever set the key in the environment or a .env file
API_KEY = os.environ.get("A11YMENDER_API_KEY", "")

# Request timeout in seconds
API_TIMEOUT = float(os.environ.get("A11YMENDER_API_TIMEOUT", "120"))

# Concurrent provider requests and retries per request
MAX_PARALLEL = int(os.environ.get("A11YMENDER_MAX_PARALLEL", "4"))
RETRIES = int(os.environ.get("A11YMENDER_RETRIES", "2"))

# Empty means the taxonomy bundled with the package
TAXONOMY_PATH = os.environ.get("A11YMENDER_TAXONOMY_PATH", "")

# Bundled data files
DATA_DIR = Path(__file__).resolve().parent / "data"
BUNDLED_TAXONOMY = DATA_DIR / "taxonomy.json"
BUNDLED_WCAG_CRITERIA = DATA_DIR / "wcag_criteria.json"
BUNDLED_CORPUS = DATA_DIR / "mini_corpus.json"


def get_api_key() -> str:
    """
    Get the provider API key from the environment.

    Raises:
        ValueError: If the key is not set in the environment
    """
    if not API_KEY:
        msg = "API key not set. Please set A11YMENDER_API_KEY in .env file."
        raise ValueError(msg)
    return API_KEY


def get_taxonomy_path() -> Path:
    """
    Get the taxonomy path from environment or use the bundled file.

    Returns:
        Path of the taxonomy JSON file
    """
    if TAXONOMY_PATH:
        return Path(TAXONOMY_PATH)
    return BUNDLED_TAXONOMY

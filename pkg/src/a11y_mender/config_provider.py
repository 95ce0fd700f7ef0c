"""Configuration provider implementation for the a11y-mender application."""

from pathlib import Path

from pydantic import SecretStr

from . import config
from .models import ProviderConfig
from .types import ConfigProvider


class DefaultConfigProvider(ConfigProvider):
    """Default implementation of ConfigProvider using the config module."""

    def get_provider_config(self) -> ProviderConfig:
        """
        Build the provider settings from the environment.

        The API key may be empty here; providers that need it check it when
        they are created.

        Returns:
            The provider configuration
        """
        return ProviderConfig(
            endpoint=config.LLM_ENDPOINT,
            model=config.LLM_MODEL,
            embedding_model=config.EMBEDDING_MODEL,
            api_key=SecretStr(config.API_KEY),
            timeout=config.API_TIMEOUT,
            max_parallel=config.MAX_PARALLEL,
            retries=config.RETRIES,
        )

    def get_taxonomy_path(self) -> Path:
        """
        Get the taxonomy path from the config module.

        Returns:
            The taxonomy path
        """
        return config.get_taxonomy_path()

    def get_api_key(self) -> str:
        """
        Get the API key from the config module.

        Returns:
            The API key

        Raises:
            ValueError: If no key is configured
        """
        return config.get_api_key()

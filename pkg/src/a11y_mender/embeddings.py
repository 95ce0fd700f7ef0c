"""
Text embeddings for the a11y-mender application.

This module provides the embedding backends used by the similarity study and
cosine similarity on top of numpy.
"""

from __future__ import annotations

import hashlib
import re
from collections.abc import Sequence

import numpy as np
from pydantic import ValidationError

from .errors import DimensionMismatchError, ProviderRejectedError
from .gateway import request_json
from .http_client import HttpxClient
from .models import EmbeddingResponse, ProviderConfig
from .types import HttpClient

_TOKEN = re.compile(r"\w+")


class EndpointEmbedder:
    """Embedder for OpenAI-compatible ``/embeddings`` endpoints."""

    def __init__(
        self, provider_config: ProviderConfig, http_client: HttpClient | None = None
    ):
        self.provider_config = provider_config
        self.http_client = http_client or HttpxClient()

    def embed(self, text: str) -> list[float]:
        """
        Embed a text with the configured embedding model.

        Raises:
            ProviderError: If the request fails
        """
        url = f"{self.provider_config.endpoint.rstrip('/')}/embeddings"
        resp = request_json(
            self.http_client,
            url,
            headers=self.provider_config.headers(),
            payload={"model": self.provider_config.embedding_model, "input": text},
            timeout=self.provider_config.timeout,
        )
        try:
            return EmbeddingResponse.model_validate(resp).vector
        except ValidationError as exc:
            raise ProviderRejectedError(None, "unexpected response shape") from exc


class HashingEmbedder:
    """
    Offline bag-of-words embedder.

    Tokens are hashed into a fixed number of signed buckets, so equal texts
    always get equal vectors and texts sharing words point the same way.
    """

    def __init__(self, dimensions: int = 256):
        self.dimensions = dimensions

    def embed(self, text: str) -> list[float]:
        """Embed a text without any network access."""
        vector = np.zeros(self.dimensions)
        for token in _TOKEN.findall(text.lower()):
            digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
            index = int.from_bytes(digest[:4], "big") % self.dimensions
            vector[index] += 1.0 if digest[4] & 1 else -1.0
        return vector.tolist()


def cosine_similarity(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Cosine of the angle between two vectors.

    Returns:
        A value in [-1, 1]; 0.0 when either vector is all zeros

    Raises:
        DimensionMismatchError: If the vectors differ in length
    """
    left = np.asarray(a, dtype=float)
    right = np.asarray(b, dtype=float)
    if left.shape != right.shape:
        raise DimensionMismatchError(left.size, right.size)
    norm = float(np.linalg.norm(left) * np.linalg.norm(right))
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(left, right) / norm, -1.0, 1.0))


def mean_similarity(values: Sequence[float]) -> float:
    """
    Arithmetic mean of similarity values.

    Raises:
        ValueError: If there are no values
    """
    if not values:
        msg = "No similarity values to average"
        raise ValueError(msg)
    return float(np.mean(values))

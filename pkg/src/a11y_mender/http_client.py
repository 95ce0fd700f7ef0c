"""HTTP client implementation for the a11y-mender application."""

from typing import Any

import httpx

from .types import FetchedPage


class HttpxClient:
    """Implementation of HttpClient using httpx library.

    Exposes last request/response metadata for verbose debugging without
    changing the public return types.
    """

    def __init__(self) -> None:
        self.last_method: str | None = None
        self.last_url: str | None = None
        self.last_status_code: int | None = None

    def post(
        self, url: str, *, headers: dict[str, str], json: dict[str, Any], timeout: float
    ) -> dict[str, Any]:
        """
        Send a POST request using httpx.

        Args:
            url: The URL to send the request to
            headers: HTTP headers to include in the request
            json: JSON payload to send in the request body
            timeout: Request timeout in seconds

        Returns:
            The parsed JSON response as a dictionary

        Raises:
            httpx.HTTPStatusError: If the HTTP request returns an error status code
            httpx.RequestError: If the request fails
        """
        self.last_method = "POST"
        self.last_url = url
        resp = httpx.post(url, headers=headers, json=json, timeout=timeout)
        self.last_status_code = resp.status_code
        _ = resp.raise_for_status()
        result: dict[str, Any] = resp.json()  # type: ignore[reportAny]
        return result

    def get(self, url: str, *, timeout: float, max_redirects: int = 5) -> FetchedPage:
        """
        Send a GET request using httpx, following redirects.

        Args:
            url: The URL to fetch
            timeout: Request timeout in seconds
            max_redirects: Maximum number of redirects to follow

        Returns:
            The fetched page with its raw bytes

        Raises:
            httpx.HTTPStatusError: If the final response has an error status code
            httpx.TooManyRedirects: If the redirect limit is exceeded
            httpx.RequestError: If the request fails
        """
        self.last_method = "GET"
        self.last_url = url
        with httpx.Client(
            follow_redirects=True, max_redirects=max_redirects, timeout=timeout
        ) as client:
            resp = client.get(url)
        self.last_status_code = resp.status_code
        _ = resp.raise_for_status()
        return FetchedPage(
            url=str(resp.url),
            status_code=resp.status_code,
            content=resp.content,
            content_type=resp.headers.get("content-type", ""),
            redirects=len(resp.history),
        )

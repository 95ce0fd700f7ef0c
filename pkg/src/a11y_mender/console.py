# ruff: noqa: D102
"""Plain-text console utilities for a11y-mender."""

from __future__ import annotations

import sys
import traceback
from typing import Any, TextIO


class BeautifulConsole:
    """Plain console output handler (no color codes)."""

    verbose: bool
    _stdout_reserved: bool

    def __init__(self, *, verbose: bool = False) -> None:
        self.verbose = verbose
        self._stdout_reserved = False

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------
    def _print(self, message: str = "", *, stream: Any = None) -> None:
        print(message, file=stream if stream is not None else sys.stdout)

    @property
    def _info_stream(self) -> TextIO:
        return sys.stderr if self._stdout_reserved else sys.stdout

    def reserve_stdout(self, reserved: bool = True) -> None:
        """Route informational messages to stderr while stdout carries a report."""
        self._stdout_reserved = reserved

    # ------------------------------------------------------------------
    # Message helpers
    # ------------------------------------------------------------------
    def success(self, message: str, title: str | None = None) -> None:
        if title:
            self._print(f"SUCCESS [{title}]: {message}", stream=self._info_stream)
        else:
            self._print(f"SUCCESS: {message}", stream=self._info_stream)

    def info(self, message: str, title: str | None = None) -> None:
        if title:
            self._print(f"INFO [{title}]: {message}", stream=self._info_stream)
        else:
            self._print(f"INFO: {message}", stream=self._info_stream)

    def warning(self, message: str, title: str | None = None) -> None:
        if title:
            self._print(f"WARNING [{title}]: {message}", stream=sys.stderr)
        else:
            self._print(f"WARNING: {message}", stream=sys.stderr)

    def error(self, message: str, title: str | None = None) -> None:
        if title:
            self._print(f"ERROR [{title}]: {message}", stream=sys.stderr)
        else:
            self._print(f"ERROR: {message}", stream=sys.stderr)

    def debug(self, message: str) -> None:
        """Print debug messages to stderr in verbose mode only."""
        if self.verbose:
            self._print(f"DEBUG: {message}", stream=sys.stderr)

    def exception(self, message: str, exc_info: Exception | None = None) -> None:
        self.error(message)
        if exc_info and self.verbose:
            traceback.print_exception(
                exc_info.__class__, exc_info, exc_info.__traceback__, file=sys.stderr
            )
        elif exc_info:
            self._print(f"  {exc_info}", stream=sys.stderr)

    def print_raw(self, content: str) -> None:
        """Print content verbatim to stdout."""
        self._print(content)


# Global console instance
console = BeautifulConsole()


def set_verbose_mode(verbose: bool = False) -> None:
    """Toggle debug output on the global console."""
    console.verbose = verbose

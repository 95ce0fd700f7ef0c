"""a11y-mender - Detect and correct Web accessibility violations in HTML."""

__version__ = "0.1.0"

__all__ = [
    "__version__",
]

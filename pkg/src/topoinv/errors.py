"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TopoinvError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameters(TopoinvError, ValueError):
    """Parameters outside the domain of the requested operation."""


class NoIndex(TopoinvError):
    """No qualifying index exists in the search range."""


class MixedPresentations(TopoinvError):
    """Elements of different presentations were combined."""


class UndeterminedSquare(TopoinvError):
    """A squaring rule left open by the presentation was exercised."""

    def __init__(self, label: int, message: str | None = None):
        self.label = label
        super().__init__(message or f"square of generator {label} is undetermined")


class UnsupportedPresentation(TopoinvError):
    """The requested operation is not defined on this presentation/element."""


class DimensionCapExceeded(TopoinvError):
    """Total dimension exceeds the configured cap for exhaustive search."""


class WorkCapExceeded(TopoinvError):
    """Estimated spectral-sequence work exceeds the configured cap."""


class DegreeMismatch(TopoinvError):
    """Index ideals over generators of different degrees were compared."""

"""Exceptions raised while reading or validating molecule text."""

from __future__ import annotations


class SmilesError(ValueError):
    """A SMILES string could not be parsed or validated.

    Carries the offending text and, when known, the 0-based position of the
    problem so callers can produce pointed diagnostics.
    """

    def __init__(self, message: str, text: str | None = None, position: int | None = None):
        self.reason = message
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class RingClosureError(SmilesError):
    """A ring-closure digit was opened but never matched."""


class ValenceError(SmilesError):
    """An atom exceeds every valence allowed for its element and charge."""


class KekulizationError(SmilesError):
    """No alternating single/double assignment exists for an aromatic system."""


class StereoError(SmilesError):
    """Contradictory or unrepresentable stereo markers."""

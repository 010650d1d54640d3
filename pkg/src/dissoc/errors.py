"""Exceptions shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """An edge-list document cannot be turned into a forest."""


class GuardExceeded(RuntimeError):
    """An input is larger than the configured limit of an exhaustive routine."""


class EnumerationCapExceeded(GuardExceeded):
    """A maximum-set stream was truncated at the caller's cap."""

    def __init__(self, cap: int):
        super().__init__(f"enumeration truncated: more than {cap} maximum dissociation sets")
        self.cap = cap


class TheoremViolation(RuntimeError):
    """A fact that must hold on every tree failed; the message is the witness."""

    def __init__(self, message: str):
        super().__init__(message)
        self.witness = message

"""Shared exception types."""


class CapExceededError(RuntimeError):
    """An enumeration or search exceeded its configured resource cap."""

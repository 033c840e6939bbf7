"""Shared exception types."""

from __future__ import annotations


class ResourceCapError(RuntimeError):
    """An enumeration would exceed its configured resource cap.

    Raised instead of attempting the work; carries the projected size so
    callers can report "cap exceeded" as a structured outcome distinct from
    a negative verdict.
    """

    def __init__(self, what: str, needed: int, cap: int) -> None:
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap

"""Shared error types."""

from __future__ import annotations


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration or evaluation would exceed its configured budget."""

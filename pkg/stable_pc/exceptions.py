from __future__ import annotations

from typing import Optional


class StablePCError(Exception):
    """
    Base class for all errors raised by stable_pc.
    """


class ConfigError(StablePCError, ValueError):
    """Invalid configuration or command parameters."""


class PreconditionError(StablePCError, ValueError):
    """An operation was called with arguments outside its domain."""


class DataError(StablePCError, ValueError):
    """
    Malformed or unusable input data.

    ``row`` and ``column`` are 0-based and point at the offending cell when known.
    """

    def __init__(self, message: str, *, row: Optional[int] = None, column: Optional[int] = None) -> None:
        super().__init__(message)
        self.row = row
        self.column = column


class NumericalError(StablePCError, ArithmeticError):
    """Non-finite input or a value outside the representable range."""


class DegenerateConditioningError(NumericalError):
    """H[1,1] * H[2,2] <= 0, the partial correlation is undefined."""


class LevelUnreachableError(StablePCError, ValueError):
    """m - l - 3 < 1, no valid test exists at this level."""

    def __init__(self, m: int, level: int) -> None:
        super().__init__(f"level {level} is unreachable with {m} samples (need m - level - 3 >= 1)")
        self.m = m
        self.level = level

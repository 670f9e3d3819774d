"""Exception hierarchy shared by the library and the command line.

Each class carries the process exit code the CLI reports for it.
"""


class PowtwoError(Exception):
    exit_code = 1


class InvalidInputError(PowtwoError, ValueError):
    exit_code = 2


class BudgetExceededError(PowtwoError):
    """A computation would exceed its enumeration, memory or factoring budget."""

    exit_code = 3


class RangeError(BudgetExceededError):
    """Input lies outside the supported numeric range (e.g. factoring)."""


class InvariantViolation(PowtwoError):
    exit_code = 4


class CacheCorruptionError(InvariantViolation):
    pass

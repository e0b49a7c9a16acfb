"""Exception types shared by every module, plus the default search budget."""

import os

DEFAULT_BUDGET = 500_000


class ParikhError(Exception):
    """Base class for all errors raised by the toolkit."""


class DimensionError(ParikhError, ValueError):
    """Operands of mismatched dimension."""


class InvalidInputError(ParikhError, ValueError):
    """Structurally invalid machine, word or document."""


class ResourceLimitError(ParikhError, RuntimeError):
    """A search exceeded its node budget.

    This says the instance is too large for the configured budget, not that
    the answer is negative.
    """


class UnsupportedError(ParikhError):
    """The operation is not available for this representation.

    Raised e.g. when complementing a constraint held in generator form.
    """


def resolve_budget(budget=None):
    """Return `budget`, or the RESOURCE_BUDGET override, or the default."""
    if budget is not None:
        return budget
    env = os.environ.get("RESOURCE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


class Counter:
    """Node counter that raises once a budget is spent."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, budget=None, what="search"):
        self.limit = resolve_budget(budget)
        self.used = 0
        self.what = what

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise ResourceLimitError(
                f"{self.what} exceeded node budget of {self.limit}"
            )

"""Shared exception types.

Budget and cap overruns are distinguished from negative search results:
an exhausted search returns None / NotFound, it never raises.
"""


class BicircError(Exception):
    """Base class for all library errors."""


class ParameterError(BicircError, ValueError):
    """A construction was asked for with invalid parameters."""


class ParseError(BicircError, ValueError):
    """Malformed textual input (cycle notation, graph6, family spec)."""


class OrderCapExceeded(BicircError):
    """A group operation needed element enumeration past the configured cap."""

    def __init__(self, order, cap):
        super().__init__(f"group order {order} exceeds enumeration cap {cap}")
        self.order = order
        self.cap = cap


class SearchBudgetExceeded(BicircError):
    """A backtracking search ran past its node budget before finishing."""

    def __init__(self, budget):
        super().__init__(f"search exceeded node budget {budget}")
        self.budget = budget

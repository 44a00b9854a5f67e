"""Exception types shared by every module."""


class InvalidArgument(ValueError):
    """An input violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """An exhaustive scan would exceed its configured budget.

    Raised instead of returning a possibly wrong answer.
    """

    def __init__(self, message: str, needed: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class PrecisionExhausted(RuntimeError):
    """Working p-adic precision is too small for the requested result."""

    def __init__(self, message: str, needed: int | None = None):
        super().__init__(message)
        self.needed = needed

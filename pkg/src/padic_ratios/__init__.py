"""Denseness of p-adic quotient sets of polynomial images and sums of powers."""

from padic_ratios.errors import BudgetExceeded, InvalidArgument, PrecisionExhausted

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "InvalidArgument", "PrecisionExhausted", "__version__"]

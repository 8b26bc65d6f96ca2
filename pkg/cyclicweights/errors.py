"""
Exception types raised by cyclicweights
"""

from typing import Optional


class FieldMismatchError(ValueError):
    """Operands belong to different fields"""


class FieldDivisionError(ZeroDivisionError):
    """Inversion of the zero element"""

    def __init__(self, message: str = "division by zero in field"):
        super().__init__(message)


class ConfigurationError(ValueError):
    """Invalid run configuration (bad m, modulus, format, ...)"""


class InternalConsistencyError(ArithmeticError):
    """
    A computation produced a value that can only come from a bug or
    corrupted input, e.g. a minimal polynomial coefficient outside F2.
    """


class DegenerateCurveError(ValueError):
    """Genus-2 interpretation requested for a = 0 or c = 0"""


class BudgetExceededError(RuntimeError):
    """
    Refusal to run an enumeration whose cost exceeds the configured budget.

    Attributes:
        operation: Name of the refused operation
        m: Extension degree requested
        estimated_cost: Rough count of elementary field evaluations
        opt_in_flag: CLI flag that lifts the default cap, if any
    """

    def __init__(self, operation: str, m: int, estimated_cost: int,
                 limit_m: int, opt_in_flag: Optional[str] = "--allow-expensive"):
        self.operation = operation
        self.m = m
        self.estimated_cost = estimated_cost
        self.limit_m = limit_m
        self.opt_in_flag = opt_in_flag
        message = (
            f"{operation} refused for m={m}: estimated cost {estimated_cost:,} "
            f"field evaluations exceeds the budget (m <= {limit_m})"
        )
        if opt_in_flag:
            message += f"; pass {opt_in_flag} to run it anyway"
        super().__init__(message)

"""Exception hierarchy shared by all modules."""


class CollatzError(Exception):
    """Base class for every error raised by this package."""


class ScenarioSyntaxError(CollatzError, ValueError):
    """Scenario text does not match the grammar (bad token, zero exponent, ...)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class ScenarioValidationError(CollatzError, ValueError):
    """Well-formed text whose word is not a scenario (empty, starts with 'd', too long)."""


class DomainError(CollatzError, ValueError):
    """Argument outside the domain of an operation (k < 1, even input where odd is needed, ...)."""


class InvariantViolation(CollatzError, AssertionError):
    """A period/phase quadruple broke its parity or bound constraints."""


class OracleNotFound(CollatzError):
    """Brute-force scan found no start number below the start period."""


class BudgetExceeded(CollatzError):
    """Forward simulation hit its operation budget before the stop condition."""

    def __init__(self, max_ops, value):
        super().__init__(f"stop condition not reached within {max_ops} ops (current value {value})")
        self.max_ops = max_ops
        self.value = value


class ScenarioMismatch(CollatzError):
    """The start number is not a realization of the scenario.

    ``step`` is the index (0-based, counting raw u/d ops) of the op that could
    not be applied, ``value`` the integer it was attempted on.
    """

    def __init__(self, step, value, reason):
        super().__init__(f"op {step} cannot be applied to {value}: {reason}")
        self.step = step
        self.value = value
        self.reason = reason

class DefenseError(Exception):
    """Base class of all errors raised by aptdefense."""


class InvalidParameterError(DefenseError, ValueError):
    """A generator, solver or sweep parameter is outside its valid range."""


class ValidationError(DefenseError, ValueError):
    """An input object violates one of its invariants."""


class EdgeListParseError(DefenseError, ValueError):
    def __init__(self, line_number: int, line: str, reason: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"Line {line_number}: {reason} ({line!r})")


class DimensionError(DefenseError, ValueError):
    """Trajectories or vectors do not share the same grid or node count."""


class StepSizeError(DefenseError, ArithmeticError):
    """An Euler step left [0, 1] by more than the clipping tolerance."""


class DivisionGuardError(DefenseError, ZeroDivisionError):
    """A prevention rate x_i <= 0 reached a right-hand side."""


def input_errors() -> tuple[type[Exception], ...]:
    """Exceptions that signal bad user input, including pydantic record validation."""
    from pydantic import ValidationError as RecordValidationError

    return (DefenseError, RecordValidationError)

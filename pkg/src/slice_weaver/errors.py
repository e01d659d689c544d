"""Exception hierarchy shared by every module."""


class SliceWeaverError(Exception):
    """Base class for all package errors."""


class InputError(SliceWeaverError, ValueError):
    """Argument outside the operation's domain."""


class CapacityError(SliceWeaverError):
    """Brute-force oracle asked to enumerate beyond its budget."""


class ModelError(SliceWeaverError, ValueError):
    """Parameter bundle that cannot be realized."""


class NumericError(SliceWeaverError, ArithmeticError):
    """Non-finite or overflowing evaluation."""


class ParseError(SliceWeaverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SliceWeaverError, ValueError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")

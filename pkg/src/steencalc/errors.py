"""Exception hierarchy shared by the library and the command-line front end."""

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


class SteencalcError(Exception):
    """Base class for every error raised by steencalc."""

    exit_code = EXIT_INPUT


class InputError(SteencalcError, ValueError):
    """Malformed or unsupported input."""


class ExpressionSyntaxError(InputError):
    """An expression string does not match the grammar."""

    def __init__(self, message: str, position: int, line: int = 1, col: int = 0) -> None:
        super().__init__(f"{message} (line {line}, column {col})")
        self.position = position
        self.line = line
        self.col = col


class UnknownGeneratorError(InputError):
    """An expression names a generator the ring does not declare."""

    def __init__(self, name: str, position: int | None = None) -> None:
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown generator '{name}'{where}")
        self.name = name
        self.position = position


class RingMismatchError(InputError):
    """Two operands live in different rings."""


class DomainError(InputError):
    """An argument lies outside the domain of an operation."""


class UnsupportedOperationError(InputError):
    """The operation is not available for the given kind of input."""


class MalformedSpecError(InputError):
    """A variety, morphism or algebra description is inconsistent."""


class PropertyViolation(SteencalcError):
    """A verified identity failed."""

    exit_code = EXIT_VIOLATION

    def __init__(self, message: str, inputs: dict[str, object] | None = None) -> None:
        super().__init__(message)
        self.inputs = inputs or {}

"""Exception hierarchy shared by every layer of the engine."""


class DelpError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 3


class ProgramSyntaxError(DelpError, ValueError):
    exit_code = 2

    def __init__(self, line, column, message):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class PiInconsistent(DelpError):
    def __init__(self, literal):
        super().__init__(f"strict knowledge derives both {literal} and its complement")
        self.literal = literal


class InvalidArgument(DelpError):
    pass


class InvalidExternal(InvalidArgument):
    pass


class NotAnArgument(InvalidArgument):
    pass


class MissingPreference(DelpError):
    def __init__(self, pair):
        super().__init__(f"no preference entry between {pair[0]} and {pair[1]}")
        self.pair = pair


class StrictUnsatisfiable(DelpError):
    pass


class SearchBudgetExceeded(DelpError):
    exit_code = 4

    def __init__(self, message, fallback=None):
        super().__init__(message)
        self.fallback = fallback


class BudgetExceeded(DelpError):
    exit_code = 4

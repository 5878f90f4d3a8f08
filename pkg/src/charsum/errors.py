"""Exception taxonomy shared by the library and the CLI exit-code mapping."""


class CharsumError(Exception):
    """Base class for all charsum errors."""


class InvalidArgumentError(CharsumError, ValueError):
    """A precondition on an argument was violated (CLI exit code 2)."""


class InfeasibleError(CharsumError):
    """A search specification admits no solution (CLI exit code 3)."""


class NotFoundError(CharsumError):
    """A search exhausted its range without a hit (CLI exit code 3)."""

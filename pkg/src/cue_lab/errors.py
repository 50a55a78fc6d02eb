"""Exception hierarchy shared by every module."""


class CueLabError(Exception):
    """Base class for all errors raised by cue_lab."""


class SizeLimitError(CueLabError):
    """A configured enumeration or degree bound was exceeded."""


class SizeMismatchError(CueLabError, ValueError):
    """Arguments that must have equal size/degree do not."""


class PreconditionError(CueLabError, ValueError):
    """An input violates an operation's precondition."""


class NumericError(CueLabError, ArithmeticError):
    """A floating-point routine failed to converge."""


class IntegralityError(CueLabError, ArithmeticError):
    """A quantity that a theorem says is an integer came out fractional."""

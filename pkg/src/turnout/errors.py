"""Exception hierarchy shared by the library and the command line."""


class TurnoutError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TurnoutError, ValueError):
    """An argument or input object violates a documented invariant."""


class RefusalError(TurnoutError):
    """A computation was refused because it would exceed a configured limit."""


class UnsupportedRuleError(RefusalError):
    """The requested algorithm does not support the given voting rule."""


class PreconditionError(TurnoutError):
    """A probabilistic precondition (e.g. a positive event probability) fails."""


class ParseError(ValidationError):
    """An input file does not follow its grammar."""

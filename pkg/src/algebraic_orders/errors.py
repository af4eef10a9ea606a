"""Exception hierarchy shared by every module."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class ParseError(InputError):
    """Text that does not follow a file or literal syntax."""


class ArityError(InputError):
    pass


class UndefinedSymbolError(InputError):
    pass


class OutOfRangeError(InputError):
    """An ordinal at or above the representable tower bound."""


class InconclusiveError(InputError):
    """A bounded search found nothing to work with."""

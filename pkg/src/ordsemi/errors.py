class OrdsemiError(Exception):
    """Base class for errors raised by this package."""


class ParseError(OrdsemiError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class TableError(OrdsemiError, ValueError):
    """Malformed or incomplete multiplication table."""


class UnknownElementError(OrdsemiError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown element"


class CutSpecError(OrdsemiError, ValueError):
    """A cut sequence that is not strictly increasing, not starting at 0, or not cofinal."""


class UndetectedPeriodicityError(OrdsemiError, RuntimeError):
    """Tail chunks did not become periodic within the search bound."""


class Regenerate(OrdsemiError):
    """A generator bias cannot be met for the given tree; draw another one."""

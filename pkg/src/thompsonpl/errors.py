"""Exception hierarchy shared by the library and the command line."""


class PLError(Exception):
    """Base class for every error raised by this package."""


class MalformedMap(PLError):
    """Raised when core/tail data do not describe a PL homeomorphism."""


class ZeroSlope(PLError):
    pass


class DomainError(PLError):
    """A map fails the membership precondition of an operation."""


class NotInK(DomainError):
    pass


class NotInComPlusF(DomainError):
    pass


class NotInComF(DomainError):
    pass


class NotInHp(DomainError):
    pass


class UnknownGenerator(PLError, KeyError):
    def __str__(self):
        return "unknown generator: %s" % (self.args[0] if self.args else "?")


class ParseError(PLError, ValueError):
    """Word syntax error, carrying the offending position and what was expected."""

    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        found = text[position:position + 1] or "end of input"
        super().__init__(
            "at position %d (%r): expected one of %s"
            % (position, found, ", ".join(self.expected))
        )

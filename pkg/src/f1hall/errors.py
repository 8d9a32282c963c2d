"""Exception hierarchy shared by the library and the command line."""


class F1HallError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class SpecError(F1HallError):
    """Invalid semigroup or group presentation."""


class ModuleError(F1HallError):
    """Action tables violating the semigroup relations, or malformed maps."""


class MorphismError(F1HallError):
    pass


class BoundError(F1HallError):
    """A requested enumeration exceeds the configured size bound."""


class ParseError(F1HallError):
    """Unparseable text input (CLI exit code 2).

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)

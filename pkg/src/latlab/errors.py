"""Exception hierarchy shared across the package."""


class LatlabError(Exception):
    """Base class for all latlab errors."""


class InputError(LatlabError):
    """Malformed or inconsistent user input (bad file, bad literal, bad assignment)."""


class ResourceError(LatlabError):
    """A configured size/depth bound was exceeded."""


class FormulaSyntaxError(InputError):
    """Raised by the formula parser; carries the offset of the offending token."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundVariableError(InputError):
    """A name occurs both free and quantified, or a quantifier shadows another."""

    def __init__(self, message, name):
        super().__init__(message)
        self.name = name

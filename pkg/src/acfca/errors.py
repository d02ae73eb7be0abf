"""Exception hierarchy.

Every error carries a CLI exit code so the command line can map failures
without inspecting messages.
"""


class AcfError(Exception):
    exit_code = 1


class InputError(AcfError):
    """Malformed input: bad labels, bad indices, unparsable files."""

    exit_code = 2


class InvalidSubsetError(InputError):
    pass


class SizeLimitError(AcfError):
    exit_code = 3


class ValidationError(AcfError):
    """A structure failed one of its defining conditions.

    ``reports`` holds whatever check reports explain the failure.
    """

    def __init__(self, message, **reports):
        super().__init__(message)
        self.reports = reports


class EmptyAttributeError(InputError):
    pass


class ForeignConceptError(InputError):
    pass


class NotDirectedError(AcfError):
    pass


class ContextMismatchError(InputError):
    pass

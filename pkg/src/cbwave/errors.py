"""Exception hierarchy shared by every cbwave module."""


class CBWError(Exception):
    """Base class for all cbwave errors."""


class InvalidArgument(CBWError, ValueError):
    pass


class ValidationError(InvalidArgument):
    """A chain or scenario failed validation.

    ``errors`` holds every violation found, not just the first.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class UnsupportedSize(CBWError):
    pass


class NoModulation(CBWError):
    pass


class WindowTooShort(CBWError):
    pass


class UndefinedVisibility(CBWError):
    pass

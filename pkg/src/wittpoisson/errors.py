"""Exception hierarchy shared by every module."""


class WittError(Exception):
    """Base class for all errors raised by this package."""


class InputError(WittError, ValueError):
    """Malformed or out-of-contract user input (CLI exit code 2)."""


class InfiniteGroupError(InputError):
    pass


class NotASubgroupError(InputError):
    pass


class AbelianCaseError(InputError):
    """Raised when f is identically zero and V(f) is abelian.

    Every linear map is then a half-derivation, so the classification
    commands have nothing meaningful to say.
    """


class CoefficientDomainError(WittError, LookupError):
    """A tabulated map or product was evaluated outside its domain."""


class IndexMismatchError(InputError):
    pass


class UnverifiedProductError(InputError):
    pass


class InternalConsistencyError(WittError, RuntimeError):
    """Two routes that must agree did not. Always an implementation bug."""


class ClassificationMismatchError(WittError):
    """A verified product did not match the reconstructed classified product."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

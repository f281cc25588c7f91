"""Exception hierarchy shared by the library and the command line front end."""


class OrthoL1Error(Exception):
    """Base class for every error raised by :mod:`ortho_l1`."""


class DomainError(OrthoL1Error, ValueError):
    """Parameters or evaluation points outside the mathematical domain."""


class UsageError(OrthoL1Error, ValueError):
    """A request the library does not answer, e.g. a moment with ``i >= n``."""


class CapabilityError(OrthoL1Error):
    """Request beyond what double precision supports (``n > N_MAX`` and the like)."""


class NumericalError(OrthoL1Error, ArithmeticError):
    """An iterative method failed to converge.

    ``diagnostics`` carries whatever the failing routine knew at the time.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

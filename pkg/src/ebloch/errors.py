"""Exception types raised across the package."""


class EBlochError(ValueError):
    """Base class for validation failures."""


class DimensionError(EBlochError):
    pass


class NotAStateError(EBlochError):
    """Raised when a Bloch vector does not map to a positive semi-definite operator."""


class NonHermitianError(EBlochError):
    pass

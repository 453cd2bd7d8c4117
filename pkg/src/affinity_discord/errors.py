"""Exception types raised across the package."""


class ValidationError(ValueError):
    """An input violates a structural or numerical precondition."""


class NonSquareError(ValidationError):
    """Matrix is not square."""


class NonHermitianError(ValidationError):
    """Matrix fails the Hermiticity tolerance."""


class NotPSDError(ValidationError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class NotUnitTraceError(ValidationError):
    """Density matrix trace differs from one."""


class DimensionMismatchError(ValidationError):
    """Operands have incompatible dimensions."""


class InvalidBlochVectorError(ValidationError):
    """Correlation triple does not define a physical Bell-diagonal state."""


class InvalidProbabilitiesError(ValidationError):
    """Probability vector is negative or not normalized."""


class OutOfRangeError(ValidationError):
    """Scalar parameter lies outside its admissible interval."""


class WrongDimensionError(ValidationError):
    """Operation requires a specific subsystem dimension."""


class UnknownFamilyError(ValidationError):
    """Unrecognized state-family tag."""


class UnsupportedDimensionError(Exception):
    """Subsystem dimension exceeds what the optimizer supports."""

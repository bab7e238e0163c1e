"""Exception types shared across the package."""


class HypharmError(Exception):
    """Base class for all package-specific errors."""


class TruncationOverflow(HypharmError):
    """An operation on a truncated table needs data outside the stored ball."""


class ZeroDiagonal(HypharmError):
    """c^e_{x, x~} vanishes, so no Haar weight exists (support axiom broken)."""


class DegenerateSpectrum(HypharmError):
    """Joint diagonalization failed to split the structure matrices."""


class DominationFailure(HypharmError):
    """Candidate dominant character does not dominate sampled characters."""


class NonIntegerDimension(HypharmError):
    """Recovered representation dimension is not close to an integer."""


class NotAssociative(HypharmError):
    """Cayley table is not associative."""


class NotLatinSquare(HypharmError):
    """Cayley table has a repeated entry in a row or column."""


class NoIdentity(HypharmError):
    """Cayley table has no two-sided identity."""


class SingularCharacterBasis(HypharmError):
    """Character matrix is numerically singular (should be impossible)."""


class ZeroValue(HypharmError):
    """Pointwise inversion hit a zero value."""


class P2Failure(HypharmError):
    """An operation requiring (P2) was called on a table certified to fail it."""


class UnboundedValueSet(Warning):
    """Value set of a multiplier grows with the truncation radius."""


class FileFormatError(HypharmError):
    """A structured input file does not follow the documented grammar."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ReciprocityError(HypharmError):
    """Fusion multiplicities violate Frobenius reciprocity."""

"""Exception types shared across the package.

Everything raised on purpose derives from :class:`QbsError`, so callers (the
CLI in particular) can distinguish domain errors from genuine bugs.
"""


class QbsError(Exception):
    """Base class for all package-specific errors."""


class NonHermitianInput(QbsError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class CommutatorTooLarge(QbsError):
    """A pair of matrices fails the commutation precondition."""


class NotPositiveSemidefinite(QbsError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class DimensionMismatch(QbsError):
    """Operands have incompatible shapes."""


class EmptySpectrum(QbsError):
    """An operation that needs at least one spectral point got none."""


class ImageOutsideQuadrant(QbsError):
    """A spectral map sent a point outside the closed positive quadrant."""


class NegativeCoordinate(QbsError):
    """A coordinate that must be nonnegative is negative beyond roundoff."""


class EmptyGamma(QbsError):
    """A realization request carried no points."""


class HeadroomExceeded(QbsError):
    """A power or product needs more shift layers than the embedding holds."""


class HypothesisViolated(QbsError):
    """A product of two block models fails a commutation hypothesis."""


class ModulusConstraintViolated(QbsError):
    """An entry scaling violates its modulus constraint."""


class NotLeftInvertible(QbsError):
    """The model is not left-invertible (some spectral point sits at the origin)."""


class InsufficientLength(QbsError):
    """A moment sequence is too short for the requested Hankel order."""


class SEqualsOne(QbsError):
    """The two-atom representing measure degenerates at s = 1."""


class EmptySharpPart(QbsError):
    """The spectrum has no points with t > eps, so the E-pencil endpoint is undefined."""


class EmptyFlatPart(QbsError):
    """The spectrum has no points with both coordinates positive."""


class ENormExceedsOne(QbsError):
    """The E block has norm above one, so no Q-pencil member is subnormal."""


class PreconditionViolated(QbsError):
    """An input leaves the domain on which an endpoint formula is valid."""


class NotQuasiBrownian(QbsError):
    """A structural decomposition was requested for a model that is not quasi-Brownian."""


class BrownianCriteriaMismatch(QbsError):
    """The spectral and structural Brownian tests disagree (ambiguous boundary data)."""


class ModelFormatError(QbsError):
    """A model file does not parse to exactly one model type."""

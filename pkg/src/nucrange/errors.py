"""Exception hierarchy shared across the package.

Everything raised on bad user input derives from :class:`NucrangeError`,
which the CLI maps to exit code 1 with a single-line diagnostic.
"""


class NucrangeError(ValueError):
    """Base class for all domain and validation errors."""

    code = "error"


class DomainError(NucrangeError):
    """A parameter lies outside its mathematically admissible domain."""

    code = "domain"


class StructureError(NucrangeError):
    """A matrix violates a required structural property (block form, ...)."""

    code = "structure"


class NotHermitianError(NucrangeError):
    code = "not-hermitian"


class InvalidKindError(NucrangeError):
    """Operation not defined for this curve kind (Empty/FullRange/...)."""

    code = "invalid-kind"


class DegenerateConicError(NucrangeError):
    """Implicit conic requested for a segment or point curve."""

    code = "degenerate-conic"


class OffCurveError(NucrangeError):
    """Angle recovery asked for a point that is not on the curve."""

    code = "off-curve"


class EmptyOmegaError(NucrangeError):
    """The admissible interval for lambda_11 is empty."""

    code = "empty-omega"


class NotAProjectorError(NucrangeError):
    code = "not-a-projector"


class EmptyCloudError(NucrangeError):
    """A Monte Carlo state cloud retained no states."""

    code = "empty-cloud"

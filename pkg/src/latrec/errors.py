"""Exception types shared across the package."""


class LatrecError(Exception):
    """Base class for all package-specific errors."""


class DegenerateBasis(LatrecError):
    """Rows that were required to be linearly independent are not."""


class SingularMatrix(LatrecError):
    """Matrix inversion was requested for a singular matrix."""


class NotASublattice(LatrecError):
    """The given vectors do not lie in the claimed parent lattice."""


class NotPrimitive(LatrecError):
    """A primitive sublattice was required; the input has index > 1 in its span."""


class InvalidRank(LatrecError):
    """Rank arguments are outside the range an operation supports."""


class RankMismatch(LatrecError):
    """A generating set / coefficient matrix does not have the stated rank."""


class RankTooLarge(LatrecError):
    """Exact enumeration was requested above the configured rank cap."""


class InvalidParams(LatrecError):
    """Reduction or planner parameters violate a documented precondition."""


class HypothesisViolated(InvalidParams):
    """Guarantee-formula parameters are outside the regime where the bound is proved."""


class SizeTooSmall(LatrecError):
    """The requested output bit size is below the floor the rounding construction needs."""


class MissingCell(LatrecError):
    """Plan extraction touched a table cell that was never computed."""


class PlanLatticeMismatch(LatrecError):
    """A plan is being executed against a lattice whose shape it was not built for."""


class InvariantViolation(LatrecError):
    """A proof-backed runtime assertion failed; carries the location context.

    These are deliberately loud: if one fires, either the input violated an
    undetected precondition or there is a bug, and silently continuing would
    produce results whose guarantees are void.
    """

    def __init__(self, message: str, context: dict | None = None):
        super().__init__(message if context is None else f"{message} [context: {context}]")
        self.context = dict(context or {})

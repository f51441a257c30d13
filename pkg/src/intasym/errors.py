"""Exception types shared across the package."""


class IntasymError(Exception):
    """Base class for all package errors."""


class DomainError(IntasymError, ValueError):
    """An argument lies outside the parameter range the computation admits."""


class InsufficientDerivatives(IntasymError, ValueError):
    """Too few derivative values at u=1 for the requested expansion order."""


class NonEvaluableF(IntasymError, ValueError):
    """The weight function has no pointwise evaluator (only derivative data)."""


class QuadratureError(IntasymError, ArithmeticError):
    """Quadrature did not reach its tolerance within the level cap."""


class DegenerateFit(IntasymError, ArithmeticError):
    """Too few residuals above the precision floor to fit a decay slope."""


class SolvabilityViolated(IntasymError, ValueError):
    """The q=1 symmetry constraint fails, so no rho-reduction exists."""

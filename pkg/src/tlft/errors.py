"""Exception hierarchy shared by every module."""


class TlftError(Exception):
    """Base class for all library errors."""


class DomainCut(TlftError, ValueError):
    """Argument lies on the branch cut (-inf, 0]."""


class PoleAt(TlftError, ValueError):
    """Argument hits a pole (nonpositive integer) of a Gamma-type factor."""


class DomainRadius(TlftError, ValueError):
    """Power series requested outside its disk of convergence."""


class DomainError(TlftError, ValueError):
    """Generic precondition failure on an argument."""


class DivergentIntegral(TlftError, ValueError):
    """Integral does not converge for the supplied exponents."""


class CoincidentPoints(TlftError, ValueError):
    """Green's function evaluated on the diagonal."""


class HypothesisViolation(TlftError, ValueError):
    """Parameters lie outside the strip where a representation holds."""


class QuadratureFailure(TlftError, RuntimeError):
    """Quadrature could not certify the requested tolerance."""


class TruncationFailure(TlftError, RuntimeError):
    """Series tail not certified below tolerance within the term budget."""


class ExtrapolationUnstable(TlftError, RuntimeError):
    """Successive extrapolants disagree beyond the stability threshold."""


class BudgetExceeded(TlftError, RuntimeError):
    """Sampling budget exhausted before reaching the requested error."""


class GridTooCoarse(TlftError, ValueError):
    """Pairing grid does not resolve the regularization kernel."""

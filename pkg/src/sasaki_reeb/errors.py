"""Exception hierarchy shared by all modules."""


class SasakiReebError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpec(SasakiReebError, ValueError):
    """Malformed spectral input (bad JSON, bad catalog string, bad types)."""


class EigenvalueOutOfRange(InvalidSpec):
    """Some eigenvalue mu violates -1 < mu < 1."""


class EmptySpec(InvalidSpec):
    """A spectrum with no entries."""


class ReebParameterOutOfRange(SasakiReebError, ValueError):
    """The Reeb parameter a must satisfy a > -1/2."""


class SolverFailure(SasakiReebError, RuntimeError):
    """The root of F could not be bracketed or the two root routes disagree."""


class DomainError(SasakiReebError, ValueError):
    """Argument outside the open moment interval."""


class QuadratureFailure(SasakiReebError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget."""


class PositivityViolation(SasakiReebError, RuntimeError):
    """A factor 1 + mu_{k,a} x became non-positive on the profile."""

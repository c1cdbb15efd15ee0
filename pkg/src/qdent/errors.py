"""Exception types shared across the engine."""


class NumericalError(RuntimeError):
    """A solver or integration step failed to produce a trustworthy result."""


class ConvergenceError(NumericalError):
    """Quadrature or eigensolver did not converge to the requested tolerance."""

"""Exception hierarchy shared by the evaluation and inversion routines."""


class MarcumError(Exception):
    """Base class for all errors raised by :mod:`marcumq`."""


class DomainError(MarcumError, ValueError):
    """An argument lies outside the domain of the requested function."""


class InfeasibleError(DomainError):
    """The inversion target cannot be attained, e.g. ``q1 <= q0`` in a two-step run."""


class BranchInfeasibleError(InfeasibleError):
    """The requested root branch of the zeta equation does not exist."""


class SingularPointError(DomainError):
    """A formula was evaluated exactly on its removable singularity."""


class ConvergenceError(MarcumError):
    """An iteration did not reach its tolerance.

    Attributes
    ----------
    best : float or None
        The best iterate found before giving up.
    iterations : int
        Number of iterations performed.
    """

    def __init__(self, message, best=None, iterations=0):
        super().__init__(message)
        self.best = best
        self.iterations = iterations


class QuadratureError(ConvergenceError):
    """Adaptive quadrature hit its subdivision limit.

    ``estimate`` holds the integral value reached and ``error`` its estimated
    absolute error.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message, best=estimate)
        self.estimate = estimate
        self.error = error

"""Exception types raised by conicpoly."""


class ConicPolyError(Exception):
    """Base class for all library errors."""


class ParameterRangeError(ConicPolyError, ValueError):
    """A Jacobi/cone parameter lies outside its admissible range."""


class DegreeTooSmallError(ConicPolyError, ValueError):
    """A formula was requested for a degree where it is not defined."""


class DimensionUnsupportedError(ConicPolyError, ValueError):
    """Explicit harmonic bases exist only for d in {2, 3}."""


class IndexRangeError(ConicPolyError, IndexError):
    """A basis index (n, m, ell) is out of range."""


class OffConeError(ConicPolyError, ValueError):
    """A point (x, t) does not satisfy |x| = t."""


class ApexEvaluationError(ConicPolyError, ValueError):
    """t^{-1} Laplace-Beltrami term evaluated at the apex with a pole."""


class DegenerateParameterError(ConicPolyError, ValueError):
    """A Pochhammer denominator vanishes or a Jacobi polynomial drops degree."""

    def __init__(self, message, n=None, j=None):
        super().__init__(message)
        self.n = n
        self.j = j

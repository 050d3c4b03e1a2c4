"""Exception hierarchy shared by all fdradius modules."""


class FdrError(Exception):
    """Base class for errors raised by fdradius."""


class NonFinite(FdrError, ValueError):
    """Raised when a matrix or vector contains NaN or infinite entries."""


class NotPSD(FdrError, ValueError):
    """Raised when a matrix expected to be positive semidefinite is not."""


class NegativeArgument(FdrError, ValueError):
    """Raised when a gauge is evaluated on a negative argument."""


class ShapeMismatch(FdrError, ValueError):
    """Raised when tuple lengths or matrix dimensions disagree."""


class EmptyFeasibleSet(FdrError):
    """Raised when the requested level exceeds the f-norm of the tuple.

    The feasible set ``{x : ||Ax||_f >= delta}`` is empty in that case and
    the constrained radius is undefined.
    """

    def __init__(self, delta, fnorm):
        super().__init__(f"level {delta:.6g} exceeds f-norm estimate {fnorm:.6g}")
        self.delta = delta
        self.fnorm = fnorm


class InvalidSpec(FdrError, ValueError):
    """Raised for malformed ensemble specifications."""


class HypothesisUnmet(FdrError):
    """Raised when a tuple does not belong to a relation's hypothesis class."""


class GaugeUnvalidated(FdrError):
    """Raised when a relation needs a gauge property that was never established."""

"""Exception hierarchy shared by all polytrans modules."""


class PolyTransError(Exception):
    """Base class for every error raised by this package."""


class DegeneratePolygon(PolyTransError, ValueError):
    """All vertices coincide (or nearly so), so no shape can be extracted."""


class SizeMismatch(PolyTransError, ValueError):
    """Two vertex/weight vectors that must have equal length do not."""


class InvalidPolygon(PolyTransError, ValueError):
    """Input is not a finite complex vector with at least three entries."""


class NoZeroWeight(PolyTransError, ValueError):
    """The closed-form spectrum needs at least one weight that is exactly zero."""


class DegenerateSpectrum(PolyTransError, ValueError):
    """The requested eigenvalue is clustered with another one."""


class ZeroWeightInProduct(PolyTransError, ZeroDivisionError):
    """A weight inside the eigenvector product formula is zero."""


class ConvergenceFailure(PolyTransError, RuntimeError):
    """The polynomial root iteration did not reach its residual target."""


class DuplicateConsecutiveVertices(PolyTransError, ValueError):
    """Two cyclically adjacent target vertices coincide.

    ``index`` is the zero-based position ``i`` such that vertex ``i`` and
    vertex ``i + 1`` (cyclic) are equal.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(
            message or f"vertices {index} and {index + 1} (cyclic, zero-based) coincide"
        )


class TargetEigenvalueCollision(PolyTransError, ValueError):
    """A competing eigenvalue equals the target's own, so no scaling separates them."""

    def __init__(self, index: int, mu: complex):
        self.index = index
        self.mu = mu
        super().__init__(f"competing value mu={mu!r} at vertex {index} equals 1")


class ZeroCompetingEigenvalue(PolyTransError, ValueError):
    """Triangle design needs a nonzero competing eigenvalue to invert."""

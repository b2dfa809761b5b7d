"""Exception types shared across the package."""


class ReebForgeError(Exception):
    """Base class for all reebforge errors."""


class MissingFaceError(ReebForgeError):
    """A listed simplex has a face that is absent and face completion was not requested."""


class VertexOutOfRangeError(ReebForgeError):
    """A simplex references a vertex id outside 0..num_vertices-1."""


class DuplicateSimplexError(ReebForgeError):
    """The same simplex was listed more than once."""


class InvalidSimplexError(ReebForgeError):
    """A simplex is empty or repeats a vertex id."""


class NotSimplicialError(ReebForgeError):
    """A vertex assignment fails to carry some simplex onto a codomain simplex."""

    def __init__(self, simplex):
        self.simplex = tuple(simplex)
        super().__init__(f"image of simplex {self.simplex} is not a codomain simplex")


class NonMonotoneMapError(ReebForgeError):
    """A map is not order-preserving with respect to the pinned vertex orders."""


class ValueCountMismatchError(ReebForgeError):
    """A vertex-value array does not match the vertex count of its complex."""


class UnknownSimplexError(ReebForgeError):
    """A queried simplex does not belong to the complex."""


class BudgetExceededError(ReebForgeError):
    """A construction grew past the configured cell cap."""

    def __init__(self, message, cap=None):
        self.cap = cap
        super().__init__(message)


class InvalidParamsError(ReebForgeError):
    """Bound-evaluator parameters violate their positivity constraints."""


class ZeroPolynomialError(ReebForgeError):
    """The zero polynomial was supplied where a nonzero one is required."""


class UnsupportedDimensionError(ReebForgeError):
    """A fixture was requested in a dimension it does not support."""


class FormatError(ReebForgeError):
    """An input document violates the file-format grammar."""

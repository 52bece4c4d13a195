"""Typed errors raised across the package.

Every error that a caller is expected to catch has its own class; generic
ValueErrors are reserved for programming mistakes (bad argument types etc.).
"""


class StablehomError(Exception):
    """Base class for all package errors."""


class ShapeMismatch(StablehomError):
    """Matrix or complex data with inconsistent dimensions."""


class SquareNonZero(StablehomError):
    """A candidate differential does not square to zero.

    Carries the offending degree in ``.degree``.
    """

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"d ∘ d != 0 at degree {degree}")


class EdgeDegree(StablehomError):
    """Cohomology (or a derived quantity) requested at a window edge."""


class ChainMismatch(StablehomError):
    """Graded maps composed along incompatible complexes."""


class ResourceLimit(StablehomError):
    """A construction exceeded the configured size cap."""


class NotAdmissible(StablehomError):
    """A quiver presentation violates the admissibility requirements."""


class BoundTooSmall(StablehomError):
    """Paths of maximal length do not vanish modulo the relations.

    The presented category may be infinite-dimensional; carries a witness
    path in ``.witness``.
    """

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"path {witness} survives at maximal length")


class CategoryMismatch(StablehomError):
    """Module-level operation applied across different base categories."""


class NotSelfInjective(StablehomError):
    """The category fails the self-injectivity test.

    Carries the offending (stalk object, representable object) pair in
    ``.witness`` when known.
    """

    def __init__(self, witness=None, message=None):
        self.witness = witness
        super().__init__(message or f"category is not self-injective (witness: {witness})")


class WindowMismatch(StablehomError):
    """Resolutions combined across incompatible degree windows."""


class WindowTooSmall(StablehomError):
    """The requested window cannot support the construction."""


class RankDeficient(StablehomError):
    """A map that is provably bijective failed the rank check.

    This always signals an implementation bug, never a property of the input.
    """


class UnknownSuite(StablehomError):
    """A verification suite name that is not registered."""


class ParseError(StablehomError):
    """Problem or report file failed to parse."""


class SchemaViolation(StablehomError):
    """Problem or report content violates the published schema."""

"""Shared test categories: the desk-scale shapes used throughout the suite."""

from stablehom.linalg import GF, DEFAULT_PRIME
from stablehom.presentations import (
    ArrowDecl,
    QuiverPresentation,
    collapse_to_algebra,
    present,
    tensor_with_algebra,
)

F = GF(DEFAULT_PRIME)


def cyclic_presentation(m, nil=2, bound=None):
    """Cyclic quiver on m vertices with all paths of length ``nil`` zero."""
    vertices = [str(i) for i in range(m)]
    arrows = [ArrowDecl(f"d{i}", str(i), str((i + 1) % m)) for i in range(m)]
    relations = []
    for i in range(m):
        path = tuple(f"d{(i + k) % m}" for k in range(nil))
        relations.append([(1, path)])
    return QuiverPresentation(vertices, arrows, relations, bound if bound is not None else nil - 1)


def cyclic_category(m, field=F, nil=2, bound=None):
    return present(cyclic_presentation(m, nil=nil, bound=bound), field)


def truncated_poly_presentation(n, bound=None):
    """One vertex with a loop t and the relation t^n = 0."""
    return QuiverPresentation(
        ["*"], [ArrowDecl("t", "*", "*")], [[(1, ("t",) * n)]],
        bound if bound is not None else n - 1,
    )


def truncated_poly_category(n, field=F, bound=None):
    return present(truncated_poly_presentation(n, bound=bound), field)


def dual_numbers(field=F):
    return truncated_poly_category(2, field)


def trivial_algebra(field=F):
    """The ground field as a one-object category."""
    return present(QuiverPresentation(["*"], [], [], 0), field)


def kxk_algebra(field=F):
    """k x k: two isolated vertices collapsed to a single object."""
    pres = QuiverPresentation(["u", "v"], [], [], 0)
    return collapse_to_algebra(present(pres, field))


def a2_category(field=F):
    """The path category of 0 -> 1 with no relations (not self-injective)."""
    return present(
        QuiverPresentation(["0", "1"], [ArrowDecl("a", "0", "1")], [], 1), field
    )


def tensor_shape(A, Q):
    return tensor_with_algebra(A, Q)

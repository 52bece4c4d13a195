import pytest

from shapes import (
    F,
    a2_category,
    cyclic_category,
    dual_numbers,
    kxk_algebra,
    trivial_algebra,
    truncated_poly_category,
    truncated_poly_presentation,
)
from stablehom.errors import BoundTooSmall, NotAdmissible
from stablehom.linalg import GF, QQ
from stablehom.presentations import (
    ArrowDecl,
    QuiverPresentation,
    collapse_to_algebra,
    opposite,
    present,
    tensor_with_algebra,
)


def test_two_cyclic_dimensions():
    Q = cyclic_category(2, bound=2)
    assert Q.dim("0", "0") == 1
    assert Q.dim("0", "1") == 1
    assert Q.dim("1", "0") == 1
    assert Q.dim("1", "1") == 1


def test_truncated_cubic_loop():
    Q = truncated_poly_category(3, bound=3)
    assert Q.dim("*", "*") == 3
    assert len(Q.radical_indices("*", "*")) == 2


def test_dual_numbers_basis():
    Q = dual_numbers()
    assert Q.labels("*", "*") == ["e_*", "t"]


def test_presented_categories_are_associative_with_units():
    for cat in (cyclic_category(2), cyclic_category(3), truncated_poly_category(3), a2_category()):
        assert cat.check_associativity() is None
        assert cat.check_units() is None


def test_radical_is_an_ideal():
    for cat in (cyclic_category(3), truncated_poly_category(3)):
        for q in cat.objects:
            for q2 in cat.objects:
                rad12 = set(cat.radical_indices(q, q2))
                for q3 in cat.objects:
                    rad13 = set(cat.radical_indices(q, q3))
                    for gi in range(cat.dim(q2, q3)):
                        for fi in rad12:
                            vec = cat.compose_basis(q, q2, q3, gi, fi)
                            for k, c in enumerate(vec):
                                if not cat.field.is_zero(c):
                                    assert k in rad13


def test_endomorphisms_split_as_unit_plus_radical():
    for cat in (cyclic_category(2), truncated_poly_category(3)):
        for q in cat.objects:
            assert cat.dim(q, q) == 1 + len(cat.radical_indices(q, q))
        assert cat.is_objectwise_elementary()


def test_bound_too_small_for_free_loop():
    pres = QuiverPresentation(["*"], [ArrowDecl("t", "*", "*")], [], 4)
    with pytest.raises(BoundTooSmall):
        present(pres, F)


def test_bound_too_small_when_relation_exceeds_truncation():
    with pytest.raises(BoundTooSmall):
        present(truncated_poly_presentation(3, bound=1), F)


def test_admissibility_violations():
    with pytest.raises(NotAdmissible):
        QuiverPresentation(["*"], [ArrowDecl("t", "*", "*")], [[(1, ("t",))]], 2)
    with pytest.raises(NotAdmissible):
        QuiverPresentation(["0", "1"], [ArrowDecl("a", "0", "1")], [[(1, ("a", "a"))]], 2)
    with pytest.raises(NotAdmissible):
        QuiverPresentation(["*"], [ArrowDecl("t", "*", "*")], [[(1, ("t", "s"))]], 2)
    with pytest.raises(NotAdmissible):
        QuiverPresentation(["*"], [ArrowDecl("t", "*", "*"), ArrowDecl("t", "*", "*")], [], 1)


def test_tensor_with_trivial_algebra_keeps_dimensions_and_tables():
    Q = cyclic_category(2)
    k = trivial_algebra()
    T = tensor_with_algebra(k, Q)
    for q in Q.objects:
        for q2 in Q.objects:
            assert T.dim(q, q2) == Q.dim(q, q2)
    for key, table in Q.comp.items():
        assert T.comp[key] == table
    assert T.unit == Q.unit


def test_tensor_with_dual_numbers_doubles_dimensions():
    Q = cyclic_category(2)
    A = dual_numbers()
    T = tensor_with_algebra(A, Q)
    for q in Q.objects:
        for q2 in Q.objects:
            assert T.dim(q, q2) == 2 * Q.dim(q, q2)
    assert T.check_associativity() is None
    assert T.check_units() is None


def test_tensor_associativity_dual_numbers_with_cubic():
    T = tensor_with_algebra(dual_numbers(), truncated_poly_category(3))
    assert T.check_associativity() is None
    assert T.check_units() is None
    assert T.dim("*", "*") == 6


def test_tensor_dimension_formula():
    A = truncated_poly_category(3)
    Q = cyclic_category(3)
    T = tensor_with_algebra(A, Q)
    for q in Q.objects:
        for q2 in Q.objects:
            assert T.dim(q, q2) == A.dim("*", "*") * Q.dim(q, q2)


def test_opposite_swaps_arrows_and_preserves_dimensions():
    Q = cyclic_category(2)
    O = opposite(Q)
    assert O.dim("0", "1") == Q.dim("1", "0")
    assert O.check_associativity() is None
    assert O.check_units() is None


def test_opposite_is_an_involution():
    for cat in (cyclic_category(3), truncated_poly_category(3)):
        OO = opposite(opposite(cat))
        assert OO.hom_basis == cat.hom_basis
        assert OO.comp == cat.comp
        assert OO.unit == cat.unit
        assert OO.radical == cat.radical


def test_opposite_of_commutative_endomorphism_ring_is_identical():
    C = truncated_poly_category(3)
    O = opposite(C)
    assert O.comp == C.comp


def test_kxk_collapse():
    A = kxk_algebra()
    assert A.single_object
    assert A.dim("*", "*") == 2
    assert A.radical_indices("*", "*") == []
    # unit is the sum of the two idempotents
    assert A.identity_vector("*") == [1, 1]
    assert A.check_associativity() is None
    assert A.check_units() is None
    assert not A.is_objectwise_elementary()


def test_collapse_of_a2():
    A = collapse_to_algebra(a2_category())
    assert A.dim("*", "*") == 3
    assert A.check_associativity() is None
    assert A.check_units() is None
    assert len(A.radical_indices("*", "*")) == 1


def test_rational_ground_field():
    Q = cyclic_category(2, field=QQ)
    assert Q.dim("0", "0") == 1
    assert Q.check_associativity() is None


def test_small_prime_field():
    Q = truncated_poly_category(3, field=GF(3))
    assert Q.dim("*", "*") == 3

import random

import pytest

from stablehom.complexes import (
    GradedMap,
    Window,
    apply_partial,
    braiding,
    cohomology,
    cohomology_map,
    compose,
    concentrated,
    hom_complex,
    make_complex,
    shift,
    tensor,
)
from stablehom.errors import EdgeDegree, ResourceLimit, ShapeMismatch, SquareNonZero
from stablehom.linalg import GF, QQ, DEFAULT_PRIME, Matrix

F = GF(DEFAULT_PRIME)


def two_term(field=F, d=1):
    """k -> k in degrees 0, 1 with the given scalar differential."""
    return make_complex(field, Window(0, 1), {0: 1, 1: 1}, {0: Matrix.from_rows(field, [[d]])})


def random_invertible(field, n, rng):
    while True:
        M = Matrix.random(field, n, n, rng)
        if M.is_invertible():
            return M


def random_complex(field, rng, max_dim=3, max_len=3):
    """A random windowed complex: sum of cells and stalks, then conjugated."""
    lo = rng.randrange(-3, 1)
    hi = lo + rng.randrange(1, max_len + 1)
    w = Window(lo, hi)
    dims = {i: 0 for i in w.degrees()}
    cells = []
    for _ in range(rng.randrange(0, 2 * (hi - lo))):
        i = rng.randrange(lo, hi)  # cell k -> k at (i, i+1)
        cells.append((i, dims[i], dims[i + 1]))
        dims[i] += 1
        dims[i + 1] += 1
    for _ in range(rng.randrange(0, 3)):
        i = rng.randrange(lo, hi + 1)  # stalk
        if dims[i] < max_dim + 2:
            dims[i] += 1
    diffs = {}
    for i in range(lo, hi):
        M = [[field.zero()] * dims[i] for _ in range(dims[i + 1])]
        for (ci, src, tgt) in cells:
            if ci == i:
                M[tgt][src] = field.one()
        diffs[i] = Matrix(field, dims[i + 1], dims[i], M)
    P = {i: random_invertible(field, dims[i], rng) if dims[i] else Matrix.identity(field, 0)
         for i in w.degrees()}
    conj = {i: P[i + 1].mul(diffs[i]).mul(P[i].inverse()) for i in range(lo, hi)}
    return make_complex(field, w, dims, conj)


def random_graded_map(C, D, degree, rng):
    comps = {}
    for j in C.window.degrees():
        if D.window.contains(degree + j):
            comps[j] = Matrix.random(C.field, D.dim(degree + j), C.dim(j), rng)
    return GradedMap(C, D, degree, comps)


# -- construction and validation ------------------------------------------


def test_single_space_is_valid_with_unit_cohomology():
    C = concentrated(F, 0, 1, Window(-1, 1))
    assert C.dim(0) == 1
    assert cohomology(C, 0)[0] == 1


def test_contractible_two_term_is_valid():
    C = two_term()
    assert C.dim(0) == C.dim(1) == 1


def test_nonsquaring_differential_rejected_at_reported_degree():
    one = Matrix.from_rows(F, [[1]])
    with pytest.raises(SquareNonZero) as exc:
        make_complex(F, Window(0, 2), {0: 1, 1: 1, 2: 1}, {0: one, 1: one})
    assert exc.value.degree == 0


def test_shape_mismatch_rejected():
    with pytest.raises(ShapeMismatch):
        make_complex(F, Window(0, 1), {0: 2, 1: 1}, {0: Matrix.from_rows(F, [[1]])})


def test_resource_cap():
    with pytest.raises(ResourceLimit):
        make_complex(F, Window(0, 0), {0: 50}, {}, max_total=10)


# -- shift ------------------------------------------------------------------


def test_shift_by_zero_is_identity():
    C = two_term()
    assert shift(C, 0) == C


def test_shift_moves_concentration_degree():
    C = concentrated(F, 0)
    S = shift(C, 1)
    assert S.window == Window(-1, -1)
    assert S.dim(-1) == 1


def test_shift_negates_differential():
    C = two_term(d=1)
    S = shift(C, 1)
    assert S.diff(-1) == Matrix.from_rows(F, [[DEFAULT_PRIME - 1]])
    assert shift(S, -1) == C


def test_shift_additivity_with_signs():
    rng = random.Random(11)
    for _ in range(10):
        C = random_complex(F, rng)
        m, n = rng.randrange(-2, 3), rng.randrange(-2, 3)
        assert shift(shift(C, m), n) == shift(C, m + n)


# -- cohomology ---------------------------------------------------------------


def test_cohomology_of_contractible_vanishes():
    C = make_complex(F, Window(-1, 2), {0: 1, 1: 1}, {0: Matrix.from_rows(F, [[1]])})
    assert cohomology(C, 0)[0] == 0
    assert cohomology(C, 1)[0] == 0


def test_cohomology_zero_differentials():
    C = make_complex(F, Window(0, 2), {0: 1, 1: 1, 2: 1}, {})
    assert cohomology(C, 1)[0] == 1


def test_cohomology_edge_degree_raises():
    C = two_term()
    with pytest.raises(EdgeDegree):
        cohomology(C, 0)
    with pytest.raises(EdgeDegree):
        cohomology(C, 1)


def test_cohomology_representatives_are_cocycles():
    rng = random.Random(3)
    for _ in range(10):
        C = random_complex(F, rng)
        for i in range(C.window.lo + 1, C.window.hi):
            dim, reps = cohomology(C, i)
            assert len(reps) == dim
            for r in reps:
                assert all(F.is_zero(x) for x in C.diff(i).apply(r))


# -- tensor -------------------------------------------------------------------


def test_tensor_with_unit_is_identity():
    rng = random.Random(5)
    D = random_complex(F, rng)
    k = concentrated(F, 0)
    T = tensor(k, D)
    assert T.window == D.window
    for i in D.window.degrees():
        assert T.dim(i) == D.dim(i)
    for i in range(D.window.lo, D.window.hi):
        assert T.diff(i) == D.diff(i)


def test_tensor_of_two_cells():
    C = two_term()
    T = tensor(C, C)
    assert [T.dim(i) for i in (0, 1, 2)] == [1, 2, 1]
    # validation inside tensor() already enforced d @ d = 0
    assert T.diff(1).mul(T.diff(0)).is_zero()


def test_tensor_with_shifted_unit_places_data_higher():
    rng = random.Random(6)
    C = random_complex(F, rng)
    k1 = concentrated(F, 1)
    T = tensor(C, k1)
    for i in T.window.degrees():
        assert T.dim(i) == C.dim(i - 1)
    for i in range(T.window.lo, T.window.hi):
        # second factor sits in degree 1; only d_C (x) id survives, unsigned
        assert T.diff(i) == C.diff(i - 1)


# -- hom-complexes ------------------------------------------------------------


def test_hom_from_unit_is_target():
    rng = random.Random(7)
    D = random_complex(F, rng)
    H = hom_complex(concentrated(F, 0), D)
    assert H.complex.window == D.window
    for i in D.window.degrees():
        assert H.complex.dim(i) == D.dim(i)
    for i in range(D.window.lo, D.window.hi):
        assert H.complex.diff(i) == D.diff(i)


def test_hom_between_contractibles_has_no_h0():
    C = make_complex(F, Window(-1, 2), {0: 1, 1: 1}, {0: Matrix.from_rows(F, [[1]])})
    H = hom_complex(C, C)
    assert cohomology(H.complex, 0)[0] == 0


def test_zero_cocycles_are_chain_maps():
    rng = random.Random(8)
    for _ in range(10):
        C = random_complex(F, rng)
        D = random_complex(F, rng)
        H = hom_complex(C, D)
        t = 0
        if not H.complex.window.contains(0) or H.complex.window.hi == 0:
            continue
        K = H.complex.diff(0).kernel_basis()
        for c in range(K.cols):
            f = H.map_of(0, K.col(c))
            assert apply_partial(f).is_zero()


def test_block_labels_round_trip():
    rng = random.Random(9)
    C = random_complex(F, rng)
    D = random_complex(F, rng)
    H = hom_complex(C, D)
    for t in H.complex.window.degrees():
        if H.complex.dim(t) == 0:
            continue
        f = random_graded_map(C, D, t, rng)
        v = H.vector_of(f)
        assert H.map_of(t, v) == f


# -- graded composition and the differential ---------------------------------


def test_compose_with_identity():
    rng = random.Random(10)
    C = random_complex(F, rng)
    D = random_complex(F, rng)
    f = random_graded_map(C, D, 1, rng)
    assert compose(GradedMap.identity(D), f) == f
    assert compose(f, GradedMap.identity(C)) == f


def test_degree_zero_chain_maps_compose_degreewise():
    C = two_term()
    f = GradedMap(C, C, 0, {0: Matrix.from_rows(F, [[2]]), 1: Matrix.from_rows(F, [[2]])})
    g = GradedMap(C, C, 0, {0: Matrix.from_rows(F, [[3]]), 1: Matrix.from_rows(F, [[3]])})
    gf = compose(g, f)
    assert gf.component(0) == Matrix.from_rows(F, [[6]])


def test_degree_one_composition_shifts_component_index():
    C = make_complex(F, Window(0, 2), {0: 1, 1: 1, 2: 1}, {})
    f = GradedMap(C, C, 1, {0: Matrix.from_rows(F, [[5]]), 1: Matrix.from_rows(F, [[7]])})
    g = GradedMap(C, C, 1, {0: Matrix.from_rows(F, [[2]]), 1: Matrix.from_rows(F, [[3]])})
    gf = compose(g, f)
    assert gf.degree == 2
    # (g @ f)^0 = g^{1} @ f^0
    assert gf.component(0) == Matrix.from_rows(F, [[15]])


def test_partial_of_chain_map_is_zero():
    C = two_term()
    f = GradedMap.identity(C)
    assert apply_partial(f).is_zero()


def test_partial_of_zero_is_zero():
    C = two_term()
    assert apply_partial(GradedMap.zero(C, C, -1)).is_zero()


def test_partial_of_homotopy_between_contractibles():
    C = make_complex(F, Window(-1, 2), {0: 1, 1: 1}, {0: Matrix.from_rows(F, [[1]])})
    h = GradedMap(C, C, -1, {1: Matrix.from_rows(F, [[4]])})
    dh = apply_partial(h)
    # degree 0 components: (d @ h)^1 and (h @ d)^0, both positive for t = -1
    assert dh.component(0) == Matrix.from_rows(F, [[4]])
    assert dh.component(1) == Matrix.from_rows(F, [[4]])


# -- randomized sign-calculus suite ------------------------------------------


@pytest.mark.parametrize("field", [F, QQ])
def test_sign_calculus_suite(field):
    rng = random.Random(2024)
    rounds = 60 if field is F else 15
    for _ in range(rounds):
        C = random_complex(field, rng)
        D = random_complex(field, rng)
        E = random_complex(field, rng)

        # d @ d = 0 is enforced by construction in all three operations
        T = tensor(C, D)
        for i in range(T.window.lo, T.window.hi - 1):
            assert T.diff(i + 1).mul(T.diff(i)).is_zero()
        H = hom_complex(C, D)
        for i in range(H.complex.window.lo, H.complex.window.hi - 1):
            assert H.complex.diff(i + 1).mul(H.complex.diff(i)).is_zero()
        S = shift(C, rng.randrange(-2, 3))
        for i in range(S.window.lo, S.window.hi - 1):
            assert S.diff(i + 1).mul(S.diff(i)).is_zero()

        # graded Leibniz rule for the Hom differential against composition
        s, t = rng.randrange(-1, 2), rng.randrange(-1, 2)
        f = random_graded_map(C, D, t, rng)
        g = random_graded_map(D, E, s, rng)
        lhs = apply_partial(compose(g, f))
        rhs = compose(apply_partial(g), f)
        sign = field.one() if s % 2 == 0 else field.neg(field.one())
        rhs = rhs.add(compose(g, apply_partial(f)).scale(sign))
        assert lhs == rhs

        # braiding is an involutive chain map
        b = braiding(C, D)
        assert apply_partial(b).is_zero()
        back = braiding(D, C)
        assert compose(back, b) == GradedMap.identity(tensor(C, D))

        # shift additivity including signs
        m, n = rng.randrange(-2, 3), rng.randrange(-2, 3)
        assert shift(shift(C, m), n) == shift(C, m + n)


def test_cohomology_map_of_identity():
    rng = random.Random(77)
    C = random_complex(F, rng)
    F_id = {i: Matrix.identity(F, C.dim(i)) for i in C.window.degrees()}
    for i in range(C.window.lo + 1, C.window.hi):
        dim, _ = cohomology(C, i)
        M = cohomology_map(F_id, C, C, i)
        assert M == Matrix.identity(F, dim)

"""Metric vector spaces: Q/B evaluation, radicals, reflections, similarities."""

import pytest

from clifproj import linalg
from clifproj.fields import gf, rationals
from clifproj.linalg import identity, mat_mul, mat_vec, matrix, vector
from clifproj.metric import (
    CharTwo,
    DependentBasis,
    DimensionMismatch,
    NotInvertible,
    NotRegular,
    NotSimilar,
    QuadraticSpace,
    VectorClass,
    as_similarity,
    diagonal_space,
    hyperbolic_pair,
    hyperbolic_plane,
    orthogonal_basis,
    rescaling_similarity,
    similarity_ratio,
    zero_space,
)


def test_eval_Q_hyperbolic():
    s = hyperbolic_plane(gf(2))
    assert s.eval_Q(vector(gf(2), [1, 1])) == gf(2).one
    assert s.eval_Q(vector(gf(2), [1, 0])).is_zero()


def test_eval_Q_zero_vector():
    s = diagonal_space(gf(5), [1, 2, 3])
    assert s.eval_Q(linalg.zero_vector(gf(5), 3)).is_zero()


def test_eval_Q_direct_expansion():
    s = diagonal_space(gf(3), [1, 1])
    assert s.eval_Q(vector(gf(3), [1, 2])) == gf(3).from_int(2)  # 1 + 4 = 5 = 2


def test_eval_Q_dimension_mismatch():
    s = diagonal_space(gf(3), [1])
    with pytest.raises(DimensionMismatch):
        s.eval_Q(vector(gf(3), [1, 2]))


def test_polar_identity_exhaustive():
    spaces = [
        hyperbolic_plane(gf(2)),
        diagonal_space(gf(3), [1, 2]),
        QuadraticSpace(gf(2), [0, 0, 1], {(0, 1): 1}),
        diagonal_space(gf(4), [1, "w"]),
    ]
    for s in spaces:
        vecs = linalg.enumerate_vectors(s.field, s.dim)
        for x in vecs:
            for y in vecs:
                diff = s.eval_Q(linalg.vec_add(x, y)) - s.eval_Q(x) - s.eval_Q(y)
                assert s.eval_B(x, y) == diff
                assert s.eval_B(x, y) == s.eval_B(y, x)
            assert s.eval_B(x, x) == s.eval_Q(x) + s.eval_Q(x)


def test_eval_B_stored_value():
    s = hyperbolic_plane(gf(2))
    e0 = vector(gf(2), [1, 0])
    e1 = vector(gf(2), [0, 1])
    assert s.eval_B(e0, e1) == gf(2).one
    assert s.eval_B(e0, linalg.zero_vector(gf(2), 2)).is_zero()


def test_radical_nondegenerate():
    assert diagonal_space(gf(3), [1, 1]).radical() == []


def test_radical_hyperbolic_padded():
    s = QuadraticSpace(gf(2), [0, 0, 0], {(0, 1): 1})
    rad = s.radical()
    assert rad == [vector(gf(2), [0, 0, 1])]


def test_radical_dim0():
    assert zero_space(gf(2), 0).radical() == []


def test_q_on_radical():
    s = QuadraticSpace(gf(2), [0, 0, 1], {(0, 1): 1})
    assert s.radical_dim() == 1
    assert s.q_nonzero_on_radical()
    t = QuadraticSpace(gf(2), [0, 0, 0], {(0, 1): 1})
    assert not t.q_nonzero_on_radical()


def test_classify_vector():
    s = hyperbolic_plane(gf(2))
    assert s.classify_vector(linalg.zero_vector(gf(2), 2)) is VectorClass.ZERO
    assert s.classify_vector(vector(gf(2), [1, 0])) is VectorClass.SINGULAR
    assert s.classify_vector(vector(gf(2), [1, 1])) is VectorClass.REGULAR


def test_reflection_swaps_hyperbolic_gf2():
    s = hyperbolic_plane(gf(2))
    m = s.reflection(vector(gf(2), [1, 1]))
    assert m == matrix(gf(2), [[0, 1], [1, 0]])


def test_reflection_negates_direction():
    s = diagonal_space(gf(5), [1, 2, 1])
    r = vector(gf(5), [1, 3, 0])
    m = s.reflection(r)
    assert mat_vec(m, r) == linalg.vec_neg(r)


def test_reflection_fixes_orthogonal_complement():
    s = diagonal_space(gf(3), [1, 1])
    r = vector(gf(3), [1, 0])
    m = s.reflection(r)
    x = vector(gf(3), [0, 1])  # B(r, x) = 0
    assert mat_vec(m, x) == x


def test_reflection_involution_and_isometry():
    for s in (diagonal_space(gf(3), [1, 2]), hyperbolic_plane(gf(4))):
        for r in linalg.enumerate_vectors(s.field, s.dim, nonzero_only=True):
            if s.eval_Q(r).is_zero():
                continue
            m = s.reflection(r)
            assert mat_mul(m, m) == identity(s.field, s.dim)
            for x in linalg.enumerate_vectors(s.field, s.dim):
                assert s.eval_Q(mat_vec(m, x)) == s.eval_Q(x)


def test_reflection_identity_iff_regular_radical_vector():
    # char 2, radical of dimension 1 carrying a regular vector
    s = QuadraticSpace(gf(2), [0, 0, 1], {(0, 1): 1})
    e2 = vector(gf(2), [0, 0, 1])
    assert s.reflection(e2) == identity(gf(2), 3)
    # a regular vector outside the radical does not act trivially
    t = hyperbolic_plane(gf(2))
    assert t.reflection(vector(gf(2), [1, 1])) != identity(gf(2), 2)


def test_reflection_requires_regular():
    s = hyperbolic_plane(gf(2))
    with pytest.raises(NotRegular):
        s.reflection(vector(gf(2), [1, 0]))


def test_similarity_ratio_identity():
    s = diagonal_space(gf(3), [1, 1])
    assert similarity_ratio(s, s, identity(gf(3), 2)) == gf(3).one


def test_similarity_ratio_rescaled_target():
    s = diagonal_space(gf(3), [1, 1])
    t = s.rescale(gf(3).from_int(2))
    assert similarity_ratio(s, t, identity(gf(3), 2)) == gf(3).from_int(2)


def test_similarity_scaling_both_axes():
    # doubling both axes has ratio 4 = 1 over GF(3): an isometry, so it is
    # not a similarity of ratio 2 onto the rescaled space
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    m = matrix(f, [[2, 0], [0, 2]])
    assert similarity_ratio(s, s, m) == f.one
    t = s.rescale(f.from_int(2))
    assert similarity_ratio(s, t, m) == f.from_int(2)


def test_similarity_ratio_none():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    t = diagonal_space(f, [1, 0])
    assert similarity_ratio(s, t, identity(f, 2)) is None
    with pytest.raises(NotSimilar):
        as_similarity(s, t, identity(f, 2))


def test_similarity_zero_form_convention():
    f = gf(3)
    s = zero_space(f, 2)
    m = matrix(f, [[1, 1], [0, 1]])
    assert similarity_ratio(s, s, m) == f.one
    assert similarity_ratio(s, diagonal_space(f, [1, 1]), m) is None


def test_similarity_rationals_basis_check():
    f = rationals()
    s = diagonal_space(f, [-1])
    t = diagonal_space(f, [1])
    assert similarity_ratio(s, t, identity(f, 1)) == f.from_int(-1)


def test_similarity_not_invertible():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    with pytest.raises(NotInvertible):
        similarity_ratio(s, s, matrix(f, [[1, 2], [2, 4]]))


def test_restrict_full_basis():
    s = QuadraticSpace(gf(3), [1, 2], {(0, 1): 1})
    r = s.restrict(linalg.standard_basis(gf(3), 2))
    assert r == s


def test_restrict_radical_line():
    s = QuadraticSpace(gf(2), [0, 0, 0], {(0, 1): 1})
    r = s.restrict([vector(gf(2), [0, 0, 1])])
    assert r == zero_space(gf(2), 1)


def test_restrict_empty():
    s = diagonal_space(gf(3), [1, 1])
    assert s.restrict([]) == zero_space(gf(3), 0)


def test_restrict_dependent():
    s = diagonal_space(gf(3), [1, 1])
    with pytest.raises(DependentBasis):
        s.restrict([vector(gf(3), [1, 0]), vector(gf(3), [2, 0])])


def test_orthogonal_basis_already_diagonal():
    s = diagonal_space(gf(5), [1, 2, 3])
    assert orthogonal_basis(s) == linalg.standard_basis(gf(5), 3)


def test_orthogonal_basis_hyperbolic_gf3():
    s = hyperbolic_plane(gf(3))
    basis = orthogonal_basis(s)
    assert len(basis) == 2
    assert s.eval_B(basis[0], basis[1]).is_zero()
    qs = {s.eval_Q(b) for b in basis}
    assert qs == {gf(3).one, gf(3).from_int(-1)}


def test_orthogonal_basis_pairwise_orthogonal_rationals():
    f = rationals()
    s = QuadraticSpace(f, [0, 0, 1], {(0, 1): 1, (1, 2): 2})
    basis = orthogonal_basis(s)
    assert len(basis) == 3
    for i in range(3):
        for j in range(i + 1, 3):
            assert s.eval_B(basis[i], basis[j]).is_zero()
    assert len(linalg.independent_subset(basis)) == 3


def test_orthogonal_basis_char2_refused():
    with pytest.raises(CharTwo):
        orthogonal_basis(hyperbolic_plane(gf(2)))


def test_rescaling_similarity():
    s = diagonal_space(gf(5), [1, 2])
    sim = rescaling_similarity(s, gf(5).from_int(3))
    assert sim.ratio == gf(5).from_int(3)
    assert sim.target.q_diag == (gf(5).from_int(3), gf(5).one)
    inv = sim.inverse()
    assert inv.ratio == gf(5).from_int(3).inverse()


def test_exceptional_shapes():
    from clifproj.lipschitz import exceptional_shape

    assert exceptional_shape(zero_space(gf(2), 2)) == ("i",)
    assert exceptional_shape(hyperbolic_plane(gf(2))) == ("ii",)
    padded = QuadraticSpace(gf(2), [0, 0, 0], {(0, 1): 1})
    assert exceptional_shape(padded) == ("ii",)
    assert exceptional_shape(hyperbolic_pair(gf(2))) == ("iii",)
    assert exceptional_shape(diagonal_space(gf(3), [1, 1])) == ()
    assert exceptional_shape(hyperbolic_plane(gf(4))) == ()
    # the anisotropic plane over GF(2) is not of hyperbolic shape
    elliptic = QuadraticSpace(gf(2), [1, 1], {(0, 1): 1})
    assert exceptional_shape(elliptic) == ()
